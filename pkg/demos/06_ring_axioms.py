"""
Ring axioms over 8-bit intensities
==================================

Wrapping byte arithmetic forms the ring Z/256; check every axiom exhaustively,
then corrupt one table entry and watch the checker find it.
"""
from thresh_forge.ringcheck import IntensityElement, mul_table, verify_ring_axioms

a, b = IntensityElement(200), IntensityElement(100)
print("200 + 100 =", (a + b).value, "  -200 =", (-a).value, "  200 * 100 =", (a * b).value)

report = verify_ring_axioms("exhaustive")
for r in report.results:
    print(("PASS" if r.passed else "FAIL"), r.name, r.checked)

broken = mul_table()
broken[3, 7] = 0
for name, triple in verify_ring_axioms("exhaustive", mul_op=broken).counterexamples:
    print("counterexample", name, triple)

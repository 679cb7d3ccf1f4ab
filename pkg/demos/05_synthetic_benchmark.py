"""
Synthetic benchmark
===================

Error rates of both methods over seeds and noise levels.
"""
from thresh_forge.pipeline import PipelineConfig
from thresh_forge.synth import SynthSpec, run_comparison

for noise in (0, 15, 30, 45):
    report = run_comparison(SynthSpec(noise_sigma=noise), PipelineConfig(), n_seeds=10)
    print(f"noise {noise:>2}: classic {report.classic_mean:.4f}  "
          f"improved {report.improved_mean:.4f}  improved wins {report.improved_wins}/10")

report = run_comparison(SynthSpec(noise_sigma=30), n_seeds=3)
print(report.to_csv())

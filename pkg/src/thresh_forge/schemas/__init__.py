"""Versioned JSON schemas for every report the toolkit writes."""
import json
from importlib import resources

VERSION = "v1"
NAMES = ("threshold_report", "kmeans_result", "run_report",
         "comparison_report", "axiom_report")


def load(name: str, version: str = VERSION) -> dict:
    path = resources.files(__name__) / version / f"{name}.schema.json"
    return json.loads(path.read_text())

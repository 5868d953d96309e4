"""The ten-question factual retrieval testset used by the demo evaluation."""
from __future__ import annotations

import json
from pathlib import Path

DEMO_TESTSET: list[dict] = [
    {
        "id": "Q1",
        "category": "Duty assignment",
        "question": "What specific measures is the Municipal Development and Reform Commission mainly responsible for implementing?",
        "expected": {"region": {"name": "Ningbo"}},
    },
    {
        "id": "Q2",
        "category": "Technology use",
        "question": "In which emission sectors is solar PV mainly applied?",
        "expected": {"sector": "Energy"},
    },
    {
        "id": "Q3",
        "category": "Target control",
        "question": "What specific control targets (e.g., for 2025) were set by Beijing?",
        "expected": {
            "region": {"name": "Beijing"},
            "year": 2025,
            "numeric": {"value": 20, "unit": "%"},
        },
    },
    {
        "id": "Q4",
        "category": "Spatial planning",
        "question": "What planning measures should the central urban area prioritize?",
        "expected": {"region": {"name": "Ningbo"}},
    },
    {
        "id": "Q5",
        "category": "Indicator meaning",
        "question": "What goal does the indicator \"energy consumption per unit GDP\" measure?",
        "expected": {"sector": "Energy"},
    },
    {
        "id": "Q6",
        "category": "Policy toolbox",
        "question": "What concrete policy instruments are included in the \"green building development\" action?",
        "expected": {"sector": "Buildings"},
    },
    {
        "id": "Q7",
        "category": "Co-benefits",
        "question": "Besides emission reduction, what co-benefits can EV promotion bring?",
        "expected": {"sector": "Transport"},
    },
    {
        "id": "Q8",
        "category": "Spatial responsibility",
        "question": "What special spatial function does the ecological conservation zone serve in carbon governance?",
        "expected": {"sector": "CarbonSink"},
    },
    {
        "id": "Q9",
        "category": "Sector governance",
        "question": "What measures does the Municipal Transport Commission take to address transport-sector emissions?",
        "expected": {"region": {"name": "Ningbo"}, "sector": "Transport"},
    },
    {
        "id": "Q10",
        "category": "Data verification",
        "question": "What is Beijing's 2025 target for renewable energy consumption share?",
        "expected": {
            "region": {"name": "Beijing"},
            "year": 2025,
            "numeric": {"value": 25, "unit": "%"},
        },
    },
]


def demo_testset() -> list[dict]:
    return json.loads(json.dumps(DEMO_TESTSET))


def write_testset(path: str | Path) -> Path:
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for record in DEMO_TESTSET:
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")
    return path

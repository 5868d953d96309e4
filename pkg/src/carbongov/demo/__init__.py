from .corpus import DEMO_RECORDS, demo_records, write_corpus
from .testset import DEMO_TESTSET, demo_testset, write_testset

__all__ = [
    "DEMO_RECORDS", "DEMO_TESTSET", "demo_records", "demo_testset",
    "write_corpus", "write_testset",
]

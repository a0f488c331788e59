from iurlab.benchmarks.suite import (
    SuiteSpec,
    build_problem,
    make_suite,
    make_suite_spec,
    suite_subset,
)
from iurlab.benchmarks.data_io import load_external_data, save_suite_data

__all__ = [
    "SuiteSpec",
    "build_problem",
    "make_suite",
    "make_suite_spec",
    "suite_subset",
    "load_external_data",
    "save_suite_data",
]

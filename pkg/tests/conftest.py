import pytest

from pisotrel.pipeline import PipelineConfig, run_pipeline


@pytest.fixture(scope="session")
def three_term_report(tmp_path_factory):
    out = tmp_path_factory.mktemp("three")
    return run_pipeline(PipelineConfig(family="three", jobs=1, out_dir=out))


@pytest.fixture(scope="session")
def four_term_report(tmp_path_factory):
    """Four-term search through degree 8, shared by the slow checks."""
    out = tmp_path_factory.mktemp("four")
    return run_pipeline(PipelineConfig(family="four", max_degree=8, jobs=1, out_dir=out))


@pytest.fixture(scope="session")
def small_four_term_report(tmp_path_factory):
    out = tmp_path_factory.mktemp("four_small")
    return run_pipeline(PipelineConfig(family="four", max_degree=6, jobs=1, out_dir=out))

import pytest

from wellcascade import CascadeSpec, WellPair
from wellcascade.cli import reference_config_path, load_config

# Calibrated reference geometry (matches the bundled paper.cfg).
REF_WIDTH = 43.85
REF_DEPTHS = (1.585, 0.272, 0.524, 0.95)
REF_DISTANCES = (60.19, 60.0, 60.0, 62.5)


@pytest.fixture(scope="session")
def reference_spec() -> CascadeSpec:
    return CascadeSpec(
        widths=(REF_WIDTH,) * 4,
        distances=REF_DISTANCES,
        depths=REF_DEPTHS,
    )


@pytest.fixture(scope="session")
def pair1(reference_spec) -> WellPair:
    return reference_spec.pair(0)


@pytest.fixture(scope="session")
def pair2(reference_spec) -> WellPair:
    return reference_spec.pair(1)


@pytest.fixture(scope="session")
def pair3(reference_spec) -> WellPair:
    return reference_spec.pair(2)


@pytest.fixture(scope="session")
def reference_config_file():
    path = reference_config_path()
    assert path.is_file()
    return path


@pytest.fixture(scope="session")
def reference_run_config(reference_config_file):
    return load_config(reference_config_file)

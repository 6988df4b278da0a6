import pytest

from simplexviz import DatasetSeries, ScenarioSpec, generate_scenario


@pytest.fixture(scope="session")
def fig6_dataset() -> DatasetSeries:
    return generate_scenario(ScenarioSpec.builtin("fig6", seed=42))


@pytest.fixture(scope="session")
def drift_dataset() -> DatasetSeries:
    return generate_scenario(ScenarioSpec.builtin("drift", seed=42))

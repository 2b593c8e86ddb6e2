import pytest
import os
import shutil
import tempfile
import yaml


@pytest.fixture
def temp_dir():
    """Create a temporary directory for tests."""
    temp_dir = tempfile.mkdtemp()
    yield temp_dir
    shutil.rmtree(temp_dir)


@pytest.fixture
def matrix_path(temp_dir):
    """A 2x3 matrix file."""
    path = os.path.join(temp_dir, "f.txt")
    with open(path, "w") as f:
        f.write("2 3\n1 2 3\n0 -4 0.5\n")
    return path


@pytest.fixture
def experiment_config_data():
    return {
        "experiment": {
            "space": {"N1": 8, "N2": 8, "p": 1, "q": 2, "u": 2, "v": 1},
            "budgets": [4, 8, 16],
            "m-override": 3,
            "measure": 1,
            "algorithm": "dispatch",
            "trials": 5,
            "master-seed": 7,
        }
    }


@pytest.fixture
def experiment_config_path(temp_dir, experiment_config_data):
    """Create an experiment config file."""
    config_path = os.path.join(temp_dir, "experiment.yaml")
    with open(config_path, "w") as f:
        yaml.dump(experiment_config_data, f)
    return config_path

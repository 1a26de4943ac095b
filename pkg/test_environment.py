import importlib
import sys

REQUIRED_PYTHON = (3, 9)
REQUIRED_MODULES = (
    "numpy", "pandas", "networkx", "joblib", "tqdm", "click", "dotenv",
)


def main():
    if sys.version_info[:2] < REQUIRED_PYTHON:
        raise TypeError(
            "This project requires Python {}.{}+. Found: Python {}".format(
                *REQUIRED_PYTHON, sys.version))

    missing = []
    for name in REQUIRED_MODULES:
        try:
            importlib.import_module(name)
        except ImportError:
            missing.append(name)
    if missing:
        raise ImportError(
            "Missing packages: {}. Run: pip install -r requirements.txt"
            .format(", ".join(missing)))

    print(">>> Development environment passes all tests!")


if __name__ == '__main__':
    main()

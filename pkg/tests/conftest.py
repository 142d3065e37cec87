"""Suite-level wiring: run the acceptance module last so its wall-clock
criterion covers the whole run."""
import time

SUITE_START = time.perf_counter()


def pytest_collection_modifyitems(config, items):
    items.sort(key=lambda item: item.fspath.basename == "test_acceptance.py")

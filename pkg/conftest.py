import os
import sys

# flat top-level modules
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full default corpus (deselect with -m 'not slow')")

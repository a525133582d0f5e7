import pytest


def run():
    pytest.main()

if __name__ == "__main__":
    run()

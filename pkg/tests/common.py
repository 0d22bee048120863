"""Define common test utilities."""

from pathlib import Path


def fixture_path(filename: str) -> str:
    """Return the path of a fixture file.

    Args:
    ----
        filename: The filename of the fixtures/ file.

    Returns:
    -------
        The path as a string, ready to pass on a command line.

    """
    return str(Path(__file__).parent / "fixtures" / filename)


def load_fixture(filename: str) -> str:
    """Load a fixture.

    Args:
    ----
        filename: The filename of the fixtures/ file to load.

    Returns:
    -------
        A string containing the contents of the file.

    """
    path = Path(fixture_path(filename))
    with Path.open(path, encoding="utf-8") as fptr:
        return fptr.read()

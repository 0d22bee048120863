"""Run the ``ncforms`` command line."""

from ncforms.cli import main

if __name__ == "__main__":
    raise SystemExit(main())

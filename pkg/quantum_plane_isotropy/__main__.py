"""
Module entry point for `python -m quantum_plane_isotropy`.
"""

import sys

from .main import main

if __name__ == "__main__":
    sys.exit(main())

"""SplitSWE command-line entry point.

Usage:
    python scripts/splitswe.py run --test 2 --scheme qtra2
    python scripts/splitswe.py verify c-property --scheme qtra1
"""

from __future__ import annotations

import sys
from pathlib import Path

# Add project root to Python path
PROJECT_ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from src.cli import main

if __name__ == "__main__":
    sys.exit(main())

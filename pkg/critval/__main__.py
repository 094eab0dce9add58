"""Entry point for ``python -m critval``."""
import sys

from critval.main import main

sys.exit(main())

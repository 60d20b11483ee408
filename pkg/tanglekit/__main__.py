"""Allow running as: python3 -m tanglekit"""
import sys

from .main import main

if __name__ == '__main__':
    sys.exit(main())

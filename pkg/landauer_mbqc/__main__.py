import sys

from landauer_mbqc.cli import main

sys.exit(main())

import sys

from fcompat.cli import main

sys.exit(main())

import sys

from lensball.cli import main

sys.exit(main())

import sys

from extscale.cli import main

sys.exit(main())

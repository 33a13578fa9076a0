import sys

from kfox.cli import main

sys.exit(main())

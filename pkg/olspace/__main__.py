import sys

from olspace.cli import main

sys.exit(main())

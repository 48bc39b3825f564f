import sys

from curvedatom.cli import main

sys.exit(main())

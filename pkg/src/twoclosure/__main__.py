import sys

from twoclosure.cli import main

sys.exit(main())

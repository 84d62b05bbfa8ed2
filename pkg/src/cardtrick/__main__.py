import sys

from cardtrick.cli import main

sys.exit(main())

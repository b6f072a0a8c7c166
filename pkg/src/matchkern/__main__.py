import sys

from matchkern.cli import main

sys.exit(main())

import sys

from pairaudit.cli import main


sys.exit(main())

import sys

from apps.khovanov.cli import main

sys.exit(main())

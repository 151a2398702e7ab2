import sys

from plcg.cli import main

sys.exit(main())

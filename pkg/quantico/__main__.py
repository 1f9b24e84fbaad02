import sys

from quantico.bench.cli import main

sys.exit(main())

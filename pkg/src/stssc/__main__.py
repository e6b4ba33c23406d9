import sys

from stssc.harness.cli import main

sys.exit(main())

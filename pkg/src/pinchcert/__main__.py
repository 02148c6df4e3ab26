import sys

from pinchcert.cli import main

sys.exit(main())

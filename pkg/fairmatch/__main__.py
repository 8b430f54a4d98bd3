import sys

from fairmatch.cli import main

sys.exit(main())

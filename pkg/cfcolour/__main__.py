import sys

from cfcolour.main import main

sys.exit(main())

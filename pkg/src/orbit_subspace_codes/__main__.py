import sys

from orbit_subspace_codes.cli import main

sys.exit(main())

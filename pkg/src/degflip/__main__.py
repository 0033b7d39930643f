from degflip.cli import main
import sys

sys.exit(main())

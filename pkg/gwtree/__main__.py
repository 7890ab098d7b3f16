# @package      gwtree
# @file         __main__.py
# @copyright    Copyright (c) 2026 The gwtree developers.
# @license      http://opensource.org/licenses/MIT MIT
#
import sys

from .cli import main

sys.exit(main())

# -*- coding: utf-8 -*-
import sys

from lensmimo.cli import main

sys.exit(main())

# -*- coding: utf-8 -*-
"""
This package contains utility functions for the lensmimo package.
"""
__all__ = ['statistics']

from lensmimo.utils import statistics

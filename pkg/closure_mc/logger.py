"""
Logging setup and shared logger for the closure_mc package.
"""

import logging

# Set up a shared logger for the closure_mc package
logger = logging.getLogger("closure_mc")

import os
import sys

# make reference_values importable from any test module
sys.path.insert(0, os.path.dirname(__file__))

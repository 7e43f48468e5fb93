# Wrapper to run the command-line module as a script from the project root
# Usage: python scripts/run_cli.py verify --internal "3 2 2"
import os
import runpy
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

if __name__ == '__main__':
    # Run the package module as if using `python -m sombor_trees.cli`
    runpy.run_module('sombor_trees.cli', run_name='__main__', alter_sys=True)

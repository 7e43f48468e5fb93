# sombor_trees package initializer
# Allows importing modules as `sombor_trees.module` when running from the project root
__all__ = [
    "cli",
    "construct",
    "degseq",
    "errors",
    "indices",
    "models",
    "oracle",
    "tree",
]

"""
The command line on the shipped example files
=============================================

Same as running ``deltafilt --input <file> <command>`` in a shell.
"""

from importlib import resources

from deltafilt.cli import main

a2 = str(resources.files("deltafilt").joinpath("data/a2.toml"))

for argv in (["check"], ["hom", "S2", "P1"], ["ext", "S1", "S2"], ["normalize", "F"],
             ["decompose", "M", "P1", "S2"]):
    print("$ deltafilt --input a2.toml", " ".join(argv))
    code = main(["--input", a2, *argv])
    print("exit", code, "\n")

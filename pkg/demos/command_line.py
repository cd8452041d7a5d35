"""
Driving the command line tool from a script
===========================================

The same entry point backs the ``skolem`` executable.
"""

import io

from skolem.cli import run


def skolem(*argv, text=""):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), io.StringIO(text), out, err)
    return code, out.getvalue() + err.getvalue()


print(skolem("decide", text="forall x . exists y . !(y = x) & exists z . x*z = y"))
print(skolem("eval", "--assign", "x=91", text="exists y z . y*z = x & !(y = x) & !(z = x)"))
print(skolem("compile", "--json", text="x*x = y"))
print(skolem("eval", "--assign", "x=0", text="x = x"))
print(skolem("decide", text="forall x . x = "))

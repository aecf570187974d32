HELP = """
def fake(x):
    not real code
"""


def one_liner(x): return x + 1


def late_doc(x):
    y = x + 1
    """Not a docstring, just an expression."""
    return y


def raw_doc():
    r"""Raw docstring with a \n escape."""
    return None


def f_then_g():
    def inner(a):
        """Nested helper."""
        return a
    return inner

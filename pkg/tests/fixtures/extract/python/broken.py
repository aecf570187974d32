def ok_before(x):
    """Survives the syntax error below."""
    return x * 2


def broken(:
    pass


def ok_after(y):
    """Also survives."""
    return y - 1

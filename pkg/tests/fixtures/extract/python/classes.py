class Stack:
    """A minimal LIFO container."""

    def __init__(self):
        self._items = []

    def push(self, item):
        """Add one item to the top."""
        self._items.append(item)

    def pop(self):
        'Remove and return the top item.'
        return self._items.pop()

    class Frozen:
        def thaw(self):
            """Return a mutable copy."""
            return Stack()


@property
def standalone(self):
    return self._x


async def fetch(url, timeout=10):
    """Fetch a URL with a timeout."""
    return await _get(url, timeout)

class Tape:
    """Zero-initialised cell array addressed by logical index.

    Cells live in a Python list; `origin` is the list position of logical cell
    0, so negative indices (sparse profile) are stored by growing the list on
    the left. `lowest`/`highest` track the extent of cells the head has
    visited, which is what tape limits are measured against.
    """

    __slots__ = ('cells', 'origin', 'mask', 'lowest', 'highest')

    def __init__(self, cell_width=8, capacity=64):
        self.cells = [0] * capacity
        self.origin = 0
        self.mask = (1 << cell_width) - 1
        self.lowest = 0
        self.highest = 0

    def __getitem__(self, index):
        position = index + self.origin
        if 0 <= position < len(self.cells):
            return self.cells[position]
        return 0

    def __setitem__(self, index, value):
        self.cells[self.position(index)] = value & self.mask

    def position(self, index):
        """List position of logical `index`, growing the list if needed."""
        position = index + self.origin
        cells = self.cells
        if position >= len(cells):
            cells.extend([0] * max(len(cells), position - len(cells) + 1))
        elif position < 0:
            extra = max(len(cells), -position)
            cells[0:0] = [0] * extra
            self.origin += extra
            position += extra
        return position

    def extent_with(self, index):
        """Number of touched cells if `index` were visited."""
        return max(self.highest, index) - min(self.lowest, index) + 1

    def visit(self, index):
        if index < self.lowest:
            self.lowest = index
        elif index > self.highest:
            self.highest = index

    @property
    def touched(self):
        return self.highest - self.lowest + 1

    def snapshot(self, start=None, stop=None):
        """(start, values) for logical cells start..stop-1, default the touched extent."""
        start = self.lowest if start is None else start
        stop = self.highest + 1 if stop is None else stop
        return start, tuple(self[index] for index in range(start, stop))

    def window(self, center, radius):
        return self.snapshot(center - radius, center + radius + 1)

    def normalized(self):
        """Touched contents with zero cells trimmed from both ends."""
        start, values = self.snapshot()
        first = next((i for i, value in enumerate(values) if value), None)
        if first is None:
            return 0, ()
        last = max(i for i, value in enumerate(values) if value)
        return start + first, values[first:last + 1]

    def copy(self):
        clone = Tape.__new__(Tape)
        clone.cells = list(self.cells)
        clone.origin = self.origin
        clone.mask = self.mask
        clone.lowest = self.lowest
        clone.highest = self.highest
        return clone

"""CSV grid parsing and the non-mutation checksum.

A grid CSV has a header row, two coordinate columns (the first two), and
value columns after that.  Cells may be empty, which marks a point outside
the plotted domain.  Parsing keeps the raw cell strings inside the pivoted
grid so a checksum can prove the structure still holds exactly the bytes
the file did: no parse step is trusted to round-trip floats.
"""

import csv
import hashlib
import math


class GridError(ValueError):
    """Malformed grid CSV or a reference to a column it does not have."""


class Grid:
    """Parsed grid: sorted axes plus a pivoted table of raw cells.

    ``surface`` derives the float field for plotting; the raw strings stay
    authoritative so ``raw_cells_in_file_order`` can re-emit them for the
    checksum comparison.
    """

    def __init__(self, header, rows):
        if len(header) < 3:
            raise GridError(
                f"need two coordinate columns and at least one value column, "
                f"got header {header!r}"
            )
        if len(set(header)) != len(header):
            raise GridError(f"duplicate column names in header {header!r}")
        self.header = list(header)
        self.x_name, self.y_name = header[0], header[1]
        self.value_names = list(header[2:])

        self._order = []  # (x, y) keys in file order
        self._table = {}  # (x, y) -> tuple of raw value cells
        for k, row in enumerate(rows):
            if len(row) != len(header):
                raise GridError(
                    f"row {k + 2} has {len(row)} cells, header has {len(header)}"
                )
            x = _parse_coord(row[0], k, self.x_name)
            y = _parse_coord(row[1], k, self.y_name)
            if (x, y) in self._table:
                raise GridError(f"duplicate grid point ({row[0]}, {row[1]})")
            self._order.append((x, y))
            self._table[(x, y)] = tuple(row[2:])
        if not self._order:
            raise GridError("no data rows")
        self.xs = sorted({x for x, _ in self._order})
        self.ys = sorted({y for _, y in self._order})

    def __len__(self):
        return len(self._order)

    def has_column(self, name: str) -> bool:
        return name in self.value_names

    def column_index(self, name: str) -> int:
        try:
            return self.value_names.index(name)
        except ValueError:
            raise GridError(
                f"no column {name!r}; value columns are {self.value_names}"
            ) from None

    def surface(self, name: str):
        """(xs, ys, Z) with Z[j][i] the value at (xs[i], ys[j]).

        Empty cells and grid holes (points absent from the file) come back
        as NaN so the renderer can mask them.
        """
        col = self.column_index(name)
        xi = {x: i for i, x in enumerate(self.xs)}
        yi = {y: j for j, y in enumerate(self.ys)}
        z = [[math.nan] * len(self.xs) for _ in self.ys]
        for (x, y), values in self._table.items():
            raw = values[col]
            if raw == "":
                continue
            try:
                v = float(raw)
            except ValueError:
                raise GridError(
                    f"cell ({x:g}, {y:g}) of column {name!r} is not a "
                    f"number: {raw!r}"
                ) from None
            z[yi[y]][xi[x]] = v
        return self.xs, self.ys, z

    def raw_cells_in_file_order(self, name: str):
        """The column's raw cell strings, walked back out of the pivoted
        table in the order the file supplied them."""
        col = self.column_index(name)
        return [self._table[key][col] for key in self._order]


def _parse_coord(raw: str, k: int, name: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise GridError(f"row {k + 2}: bad {name} coordinate {raw!r}") from None
    if not math.isfinite(value):
        raise GridError(f"row {k + 2}: non-finite {name} coordinate")
    return value


def parse_grid(path: str) -> Grid:
    try:
        fh = open(path, "r", encoding="utf-8", newline="")
    except OSError as exc:
        raise GridError(f"cannot read {path}: {exc}") from None
    with fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise GridError(f"{path}: empty file") from None
        rows = [tuple(row) for row in reader]
    if not rows:
        raise GridError(f"{path}: no data rows")
    return Grid(header, rows)


def value_checksum(cells) -> str:
    """sha256 over raw value cells, newline-joined, in file order."""
    return hashlib.sha256("\n".join(cells).encode("utf-8")).hexdigest()


def checksum_roundtrip(path: str, column: str):
    """(input_hash, parsed_hash) for one value column.

    The input hash comes from a direct scan of the CSV text; the parsed
    hash re-emits the cells held by the pivoted ``Grid``.  Equality means
    parsing neither altered nor reordered the data.
    """
    grid = parse_grid(path)
    col = grid.column_index(column)
    input_cells = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        next(reader)
        for row in reader:
            input_cells.append(row[2 + col])
    parsed_cells = grid.raw_cells_in_file_order(column)
    return value_checksum(input_cells), value_checksum(parsed_cells)

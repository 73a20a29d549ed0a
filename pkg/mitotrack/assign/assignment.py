import collections
import typing

import numpy as np


__all__ = ['Assignment', 'UNASSIGNED']


UNASSIGNED = -1


class Assignment:
    """One column per row, each column being used at most once.

    When the assignment solves an extended matrix, i.e. when `n_obj` is set, columns are
    translated into events: every row is either given to an object or left unassigned, and an
    object receiving two rows divides.

    Parameters:
        row_to_col: Column of every row.
        total_cost: Sum of the selected entries.
        n_obj: Number of objects of the extended matrix the assignment solves, if any.
        frequency: Fraction of the samples in which a sampler visited the assignment.

    Example:

        >>> from mitotrack import assign

        >>> a = assign.Assignment((0, 2, 4), 3.5, n_obj=1)
        >>> a.object_of_row
        (0, -1, 0)
        >>> a.mitoses
        [(0, 0, 2)]

    """

    def __init__(self, row_to_col: typing.Sequence[int], total_cost: float,
                 n_obj: typing.Optional[int] = None, frequency: float = 1.):
        self.row_to_col = tuple(int(c) for c in row_to_col)
        self.total_cost = float(total_cost)
        self.n_obj = n_obj
        self.frequency = frequency

    @property
    def n_det(self) -> int:
        return len(self.row_to_col)

    @property
    def object_of_row(self) -> typing.Tuple[int, ...]:
        """Object index of every row, `UNASSIGNED` for rows left to births or clutter."""
        if self.n_obj is None:
            return self.row_to_col
        n_obj, n_det = self.n_obj, self.n_det
        out = []
        for col in self.row_to_col:
            if col < n_obj:
                out.append(col)
            elif col < n_obj + n_det:
                out.append(UNASSIGNED)
            else:
                out.append(col - n_obj - n_det)
        return tuple(out)

    @property
    def signature(self) -> tuple:
        """Identifies the events, blind to which object block a division used."""
        return self.object_of_row

    @property
    def rows_of_object(self) -> typing.Dict[int, typing.Tuple[int, ...]]:
        rows = collections.defaultdict(list)
        for row, obj in enumerate(self.object_of_row):
            if obj != UNASSIGNED:
                rows[obj].append(row)
        return {obj: tuple(r) for obj, r in rows.items()}

    @property
    def unassigned_rows(self) -> typing.List[int]:
        return [row for row, obj in enumerate(self.object_of_row) if obj == UNASSIGNED]

    @property
    def mitoses(self) -> typing.List[typing.Tuple[int, int, int]]:
        """``(object, first row, second row)`` of every division."""
        return [
            (obj, rows[0], rows[1])
            for obj, rows in sorted(self.rows_of_object.items())
            if len(rows) == 2
        ]

    def missed_objects(self) -> typing.List[int]:
        if self.n_obj is None:
            return []
        assigned = self.rows_of_object
        return [i for i in range(self.n_obj) if i not in assigned]

    def cost_in(self, values) -> float:
        """Recomputes the total cost from a cost matrix."""
        values = np.asarray(values, dtype=float)
        return float(sum(values[r, c] for r, c in enumerate(self.row_to_col)))

    def __eq__(self, other):
        return isinstance(other, Assignment) and self.row_to_col == other.row_to_col

    def __hash__(self):
        return hash(self.row_to_col)

    def __repr__(self):
        return (f'Assignment(row_to_col={self.row_to_col}, total_cost={self.total_cost:.6f}, '
                f'frequency={self.frequency:.4f})')

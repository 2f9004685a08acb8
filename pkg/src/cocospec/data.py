"""Domain types, CSV ingestion, wavelength windowing and fold assignment.

CSV grammar (bit-exact, both read and written):
  line 1:       label,<w1>,<w2>,...,<wd>     wavelengths in nm, strictly increasing
  lines 2..n+1: <class-name>,<a1>,...,<ad>   absorbance values
Separator is ',', decimal point '.', line terminator '\\n', no quoting.
Values are written with 17 significant digits so a round trip reproduces
float64 data bit-identically.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DataFormatError, ValidationError
from .rng import SplitMix64

DEFAULT_SEED = 42


@dataclass(frozen=True)
class WavelengthAxis:
    """Strictly increasing, positive, finite wavelengths in nm."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", v)
        if v.ndim != 1 or v.size < 1:
            raise ValidationError("wavelength axis must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(v)) or np.any(v <= 0.0):
            raise ValidationError("wavelengths must be finite and positive")
        if np.any(np.diff(v) <= 0.0):
            raise ValidationError("wavelengths must be strictly increasing")

    def __len__(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class ClassLabel:
    id: int
    name: str


@dataclass(frozen=True)
class SpectralDataset:
    """Absorbance matrix X (n x d), integer labels y, axis and label table."""

    X: np.ndarray
    y: np.ndarray
    axis: WavelengthAxis
    label_table: tuple

    def __post_init__(self):
        x = np.asarray(self.X, dtype=float)
        y = np.asarray(self.y, dtype=int)
        object.__setattr__(self, "X", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "label_table", tuple(self.label_table))
        if x.ndim != 2:
            raise ValidationError("X must be a 2-D matrix")
        if y.ndim != 1 or y.size != x.shape[0]:
            raise ValidationError("label count must equal the number of spectra")
        if x.shape[1] != len(self.axis):
            raise ValidationError("column count must equal the axis length")
        if not np.all(np.isfinite(x)):
            bad = np.argwhere(~np.isfinite(x))[0]
            raise ValidationError(
                f"non-finite absorbance at row {bad[0]}, column {bad[1]}"
            )
        ids = [lab.id for lab in self.label_table]
        if ids != list(range(len(ids))):
            raise ValidationError("label ids must be contiguous 0..c-1")
        names = [lab.name for lab in self.label_table]
        if len(set(names)) != len(names):
            raise ValidationError("label names must be unique")
        if y.size and (y.min() < 0 or y.max() >= len(ids)):
            raise ValidationError("a label id falls outside the label table")

    @property
    def n_samples(self) -> int:
        return self.X.shape[0]

    @property
    def n_features(self) -> int:
        return self.X.shape[1]

    @property
    def n_classes(self) -> int:
        return len(self.label_table)

    def class_name(self, class_id: int) -> str:
        return self.label_table[class_id].name

    def subset(self, rows) -> "SpectralDataset":
        """Dataset restricted to the given row indices (axis and labels kept)."""
        rows = np.asarray(rows, dtype=int)
        return SpectralDataset(
            X=self.X[rows], y=self.y[rows], axis=self.axis, label_table=self.label_table
        )


@dataclass(frozen=True)
class CsvOptions:
    label_column: str = "label"


@dataclass(frozen=True)
class FoldAssignment:
    """fold_of[i] is the fold of sample i; folds are 0..k-1."""

    fold_of: np.ndarray
    k: int
    seed: int = field(default=DEFAULT_SEED)

    def __post_init__(self):
        f = np.asarray(self.fold_of, dtype=int)
        object.__setattr__(self, "fold_of", f)
        if self.k < 2:
            raise ValidationError("fold count must be at least 2")
        if f.size and (f.min() < 0 or f.max() >= self.k):
            raise ValidationError("fold index out of range")
        counts = np.bincount(f, minlength=self.k)
        if np.any(counts == 0):
            raise ValidationError("every fold must be non-empty")

    def test_indices(self, fold: int) -> np.ndarray:
        return np.nonzero(self.fold_of == fold)[0]

    def train_indices(self, fold: int) -> np.ndarray:
        return np.nonzero(self.fold_of != fold)[0]


def _parse_float(cell: str, row: int, col: int) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise DataFormatError(
            f"non-numeric value {cell!r} at row {row}, column {col}"
        ) from None
    if not np.isfinite(value):
        raise DataFormatError(f"non-finite value {cell!r} at row {row}, column {col}")
    return value


def load_csv(source, options: CsvOptions = CsvOptions()) -> SpectralDataset:
    """Read a SpectralDataset from a text stream or path in the CSV grammar above.

    Class names are assigned ids in order of first appearance.  Row and
    column numbers in error messages are 1-based file coordinates.
    """
    if hasattr(source, "read"):
        text = source.read()
        if isinstance(text, bytes):
            text = text.decode("utf-8")
    else:
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise DataFormatError("empty file")

    header = lines[0].split(",")
    if options.label_column not in header:
        raise DataFormatError(
            f"label column {options.label_column!r} not found in header"
        )
    label_idx = header.index(options.label_column)
    wl_cols = [i for i in range(len(header)) if i != label_idx]
    if not wl_cols:
        raise DataFormatError("header declares no wavelength columns")
    try:
        wavelengths = [float(header[i]) for i in wl_cols]
    except ValueError:
        raise DataFormatError("malformed header: wavelengths must be numeric") from None
    axis = WavelengthAxis(np.array(wavelengths))

    names: list[str] = []
    name_to_id: dict[str, int] = {}
    rows = []
    y = []
    for r, line in enumerate(lines[1:], start=2):
        cells = line.split(",")
        if len(cells) != len(header):
            raise DataFormatError(
                f"row {r} has {len(cells)} cells, expected {len(header)}"
            )
        name = cells[label_idx]
        if name not in name_to_id:
            name_to_id[name] = len(names)
            names.append(name)
        y.append(name_to_id[name])
        rows.append(
            [_parse_float(cells[i], r, i + 1) for i in wl_cols]
        )
    if not rows:
        raise DataFormatError("file contains a header but no spectra")

    table = tuple(ClassLabel(i, name) for i, name in enumerate(names))
    return SpectralDataset(X=np.array(rows), y=np.array(y), axis=axis, label_table=table)


def format_value(x: float) -> str:
    """Decimal text with 17 significant digits (float64 round-trip safe)."""
    return format(float(x), ".17g")


def save_csv(ds: SpectralDataset, target, options: CsvOptions = CsvOptions()) -> None:
    """Write a SpectralDataset in the documented CSV grammar."""
    lines = [
        options.label_column + "," + ",".join(format_value(w) for w in ds.axis.values)
    ]
    for i in range(ds.n_samples):
        lines.append(
            ds.class_name(ds.y[i]) + "," + ",".join(format_value(v) for v in ds.X[i])
        )
    text = "\n".join(lines) + "\n"
    if hasattr(target, "write"):
        target.write(text)
    else:
        with open(target, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def select_window(ds: SpectralDataset, lo_nm: float, hi_nm: float) -> SpectralDataset:
    """Dataset restricted to columns with lo_nm <= wavelength <= hi_nm."""
    if not lo_nm < hi_nm:
        raise ValidationError("window requires lo_nm < hi_nm")
    mask = (ds.axis.values >= lo_nm) & (ds.axis.values <= hi_nm)
    if not np.any(mask):
        raise ValidationError(
            f"window [{lo_nm}, {hi_nm}] contains no wavelengths of the axis"
        )
    return SpectralDataset(
        X=ds.X[:, mask],
        y=ds.y,
        axis=WavelengthAxis(ds.axis.values[mask]),
        label_table=ds.label_table,
    )


def stratified_folds(
    ds: SpectralDataset,
    k: int,
    seed: int = DEFAULT_SEED,
    allow_small_classes: bool = False,
) -> FoldAssignment:
    """Deterministic stratified fold assignment.

    Recipe (fixed so any implementation can reproduce it): one SplitMix64
    stream seeded with `seed`; classes processed in ascending id; within a
    class, member indices in ascending dataset order are Fisher-Yates
    shuffled and dealt round-robin to folds, starting at the fold after
    the previous class's last deal (cumulative count modulo k).  The
    stagger keeps overall fold sizes balanced.
    """
    if k < 2:
        raise ValidationError("fold count must be at least 2")
    if k > ds.n_samples:
        raise ValidationError("fold count exceeds the number of samples")
    counts = np.bincount(ds.y, minlength=ds.n_classes)
    for label in ds.label_table:
        if counts[label.id] == 0:
            raise ValidationError(f"class {label.name!r} has no members")
        if counts[label.id] < k and not allow_small_classes:
            raise ValidationError(
                f"class {label.name!r} has {counts[label.id]} members, fewer than "
                f"{k} folds (pass allow_small_classes=True to permit this)"
            )
    stream = SplitMix64(seed)
    fold_of = np.empty(ds.n_samples, dtype=int)
    start = 0
    for label in ds.label_table:
        members = list(np.nonzero(ds.y == label.id)[0])
        stream.shuffle(members)
        for pos, idx in enumerate(members):
            fold_of[idx] = (start + pos) % k
        start = (start + len(members)) % k
    return FoldAssignment(fold_of=fold_of, k=k, seed=seed)

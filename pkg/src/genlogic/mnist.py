"""Handwritten-digit experiments: idx files, generation, prediction, curves.

Images are 28x28 greyscale bytes binarized at a threshold; each image
becomes one observed world over 794 atoms, the pixel propositions p0..p783
followed by the digit propositions d0..d9 (exactly one of which holds).
Digit images are generated as per-pixel white probabilities conditioned on
a digit atom, and digits are predicted from the posterior over training
observations given all 784 pixel literals. A Hamming-distance k-nearest-
neighbour baseline is included for comparison.
"""

from __future__ import annotations

import csv
import gzip
import os
import struct
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np

from .data import Dataset
from .engine import LIMIT_ONE, Regime, UNDEFINED, fixed, posterior_data
from .formulas import Atom, Formula, Not
from .signature import Signature
from .worlds import World

IMAGE_MAGIC = 2051
LABEL_MAGIC = 2049
SIDE = 28
N_PIXELS = SIDE * SIDE
N_DIGITS = 10
N_ATOMS = N_PIXELS + N_DIGITS
DEFAULT_THRESHOLD = 30


@dataclass(frozen=True, eq=False)
class ImageSet:
    """Greyscale images as a (n, 784) uint8 array with (n,) uint8 labels."""

    images: np.ndarray
    labels: np.ndarray

    def __post_init__(self):
        if self.images.dtype != np.uint8 or self.images.ndim != 2 \
                or self.images.shape[1] != N_PIXELS:
            raise ValueError("images must be a (n, 784) uint8 array")
        if self.labels.dtype != np.uint8 or self.labels.shape != (len(self.images),):
            raise ValueError("labels must be a uint8 array matching the images")
        if self.labels.size and int(self.labels.max()) >= N_DIGITS:
            raise ValueError("labels must lie in 0..9")

    def __len__(self) -> int:
        return len(self.images)

    def take(self, n: int) -> "ImageSet":
        """The first n images, in file order."""
        if not 0 < n <= len(self):
            raise ValueError(f"cannot take {n} of {len(self)} images")
        return ImageSet(self.images[:n], self.labels[:n])


def _read_bytes(path) -> bytes:
    if os.fspath(path).endswith(".gz"):
        with gzip.open(path, "rb") as fh:
            return fh.read()
    with open(path, "rb") as fh:
        return fh.read()


def load_idx(path) -> np.ndarray:
    """Read one idx file: (n, 784) uint8 for images, (n,) uint8 for labels.

    Accepts gzip-compressed files by extension. Only 28x28 image files
    (magic 2051) and label files (magic 2049) are recognized.
    """
    name = os.fspath(path)
    raw = _read_bytes(path)
    if len(raw) < 8:
        raise ValueError(f"{name}: truncated idx header")
    (magic,) = struct.unpack_from(">i", raw, 0)
    if magic == IMAGE_MAGIC:
        if len(raw) < 16:
            raise ValueError(f"{name}: truncated image header")
        n, rows, cols = struct.unpack_from(">iii", raw, 4)
        if rows != SIDE or cols != SIDE:
            raise ValueError(f"{name}: expected 28x28 images, got {rows}x{cols}")
        body = raw[16:]
        if len(body) != n * N_PIXELS:
            raise ValueError(f"{name}: image payload does not match the header count")
        return np.frombuffer(body, dtype=np.uint8).reshape(n, N_PIXELS).copy()
    if magic == LABEL_MAGIC:
        (n,) = struct.unpack_from(">i", raw, 4)
        body = raw[8:]
        if len(body) != n:
            raise ValueError(f"{name}: label payload does not match the header count")
        labels = np.frombuffer(body, dtype=np.uint8).copy()
        if labels.size and int(labels.max()) >= N_DIGITS:
            raise ValueError(f"{name}: labels must lie in 0..9")
        return labels
    raise ValueError(f"{name}: unrecognized idx magic {magic}")


def write_idx(path, array: np.ndarray) -> None:
    """Write a (n, 784) image array or a (n,) label array in idx format."""
    arr = np.ascontiguousarray(array, dtype=np.uint8)
    with open(path, "wb") as fh:
        if arr.ndim == 2 and arr.shape[1] == N_PIXELS:
            fh.write(struct.pack(">iiii", IMAGE_MAGIC, arr.shape[0], SIDE, SIDE))
        elif arr.ndim == 1:
            fh.write(struct.pack(">ii", LABEL_MAGIC, arr.shape[0]))
        else:
            raise ValueError("expected a (n, 784) image array or a (n,) label array")
        fh.write(arr.tobytes())


def load_image_set(images_path, labels_path) -> ImageSet:
    images = load_idx(images_path)
    labels = load_idx(labels_path)
    if images.ndim != 2:
        raise ValueError(f"{os.fspath(images_path)}: not an image file")
    if labels.ndim != 1:
        raise ValueError(f"{os.fspath(labels_path)}: not a label file")
    if len(images) != len(labels):
        raise ValueError("image and label files disagree on the number of items")
    return ImageSet(images, labels)


def binarize(images: np.ndarray, threshold: int = DEFAULT_THRESHOLD) -> np.ndarray:
    """Boolean white mask: intensity at or above the threshold."""
    arr = np.asarray(images)
    if arr.ndim != 2 or arr.shape[1] != N_PIXELS:
        raise ValueError("images must have shape (n, 784)")
    return arr >= threshold


@lru_cache(maxsize=1)
def digit_signature() -> Signature:
    """The 794-proposition vocabulary: p0..p783 then d0..d9."""
    names = tuple(f"p{i}" for i in range(N_PIXELS))
    names += tuple(f"d{c}" for c in range(N_DIGITS))
    return Signature(propositions=names)


def image_dataset(batch: ImageSet, threshold: int = DEFAULT_THRESHOLD) -> Dataset:
    """One observed world per image: pixel bits plus the label's digit atom."""
    sig = digit_signature()
    packed = np.packbits(binarize(batch.images, threshold), axis=1, bitorder="little")
    entries = []
    for row, label in zip(packed, batch.labels):
        bits = int.from_bytes(row.tobytes(), "little") | (1 << (N_PIXELS + int(label)))
        entries.append((World(sig, bits), 1))
    return Dataset(tuple(entries))


def split_dataset(data: Dataset):
    """Unpack a digit dataset into (pixels, labels, counts) numpy arrays.

    pixels is (n, 784) bool, labels and counts are (n,) int64; each entry
    must set exactly one digit atom.
    """
    n = len(data.entries)
    pixels = np.zeros((n, N_PIXELS), dtype=bool)
    labels = np.zeros(n, dtype=np.int64)
    counts = np.zeros(n, dtype=np.int64)
    pixel_mask = (1 << N_PIXELS) - 1
    for i, (w, c) in enumerate(data.entries):
        label_bits = w.bits >> N_PIXELS
        if label_bits.bit_count() != 1:
            raise ValueError("each observation must set exactly one digit atom")
        labels[i] = label_bits.bit_length() - 1
        raw = (w.bits & pixel_mask).to_bytes(N_PIXELS // 8, "little")
        pixels[i] = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
        counts[i] = c
    return pixels, labels, counts


def _class_mean(pixels, labels, counts, digit: int) -> np.ndarray:
    mask = labels == digit
    if not mask.any():
        raise ValueError(f"no observations labelled {digit}")
    w = counts[mask]
    # Integer sums, one float division: bit-identical to any recount.
    return (pixels[mask] * w[:, None]).sum(axis=0) / w.sum()


def generate_digit(data: Dataset, digit: int) -> np.ndarray:
    """Per-pixel white probability given the digit's atom, as mu -> 1.

    Equals the class-conditional relative frequency of each pixel, which is
    what conditioning each pixel atom on the digit atom yields in the limit
    regime; computed for all 784 pixels in one pass.
    """
    if not 0 <= digit < N_DIGITS:
        raise ValueError(f"digit must lie in 0..9, got {digit}")
    pixels, labels, counts = split_dataset(data)
    return _class_mean(pixels, labels, counts, digit)


def generate_all(data: Dataset) -> np.ndarray:
    """White-probability images for all ten digits, shape (10, 784)."""
    pixels, labels, counts = split_dataset(data)
    return np.stack([_class_mean(pixels, labels, counts, d) for d in range(N_DIGITS)])


def write_pgm(path, probs) -> None:
    """Render 784 values in [0, 1] as a binary 28x28 greyscale image."""
    arr = np.asarray(probs, dtype=np.float64).reshape(N_PIXELS)
    if arr.min() < 0 or arr.max() > 1:
        raise ValueError("pixel probabilities must lie in [0, 1]")
    body = np.rint(arr * 255).astype(np.uint8).tobytes()
    with open(path, "wb") as fh:
        fh.write(b"P5\n28 28\n255\n" + body)


def pixel_premises(pixel_bits: int) -> tuple[Formula, ...]:
    """All 784 pixel literals of an image: p_j when white, not p_j when black."""
    out = []
    for j in range(N_PIXELS):
        atom = Atom(f"p{j}")
        out.append(atom if (pixel_bits >> j) & 1 else Not(atom))
    return tuple(out)


def predict_digit(train: Dataset, pixel_bits: int, regime: Regime = LIMIT_ONE):
    """Posterior over the ten digit atoms given every pixel literal.

    Each training observation is weighted by how well it matches the pixel
    evidence under the regime; the weights then vote for their labels.
    Returns a 10-tuple summing to 1, or UNDEFINED when the regime is the
    strict one and no training image matches exactly.
    """
    weights = posterior_data(pixel_premises(pixel_bits), train, regime)
    if weights is UNDEFINED:
        return UNDEFINED
    totals = [0] * N_DIGITS
    for (w, c), wt in zip(train.entries, weights):
        label = (w.bits >> N_PIXELS).bit_length() - 1
        totals[label] += c * wt
    return tuple(totals)


_POPCOUNT = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint16)


def _pack(bits) -> np.ndarray:
    arr = np.asarray(bits, dtype=bool)
    if arr.ndim != 2 or arr.shape[1] != N_PIXELS:
        raise ValueError("expected a (n, 784) boolean array")
    return np.packbits(arr, axis=1, bitorder="little")


def hamming_matrix(train_bits, test_bits) -> np.ndarray:
    """Pairwise Hamming distances between bit rows, shape (n_test, n_train)."""
    train_packed = _pack(train_bits)
    test_packed = _pack(test_bits)
    out = np.empty((len(test_packed), len(train_packed)), dtype=np.int64)
    for i, row in enumerate(test_packed):
        out[i] = _POPCOUNT[train_packed ^ row].sum(axis=1, dtype=np.int64)
    return out


def knn_scores(train_bits, train_labels, test_bits, k: int) -> np.ndarray:
    """Per-digit neighbour vote fractions, shape (n_test, 10).

    Distance ties are broken by training order (stable sort), matching the
    brute-force reference.
    """
    labels = np.asarray(train_labels, dtype=np.int64)
    if not 1 <= k <= labels.size:
        raise ValueError(f"k must lie in 1..{labels.size}, got {k}")
    dist = hamming_matrix(train_bits, test_bits)
    out = np.zeros((dist.shape[0], N_DIGITS), dtype=np.float64)
    for i in range(dist.shape[0]):
        for lab in labels[np.argsort(dist[i], kind="stable")[:k]]:
            out[i, lab] += 1
    return out / k


@dataclass(frozen=True)
class RocCurve:
    """Operating points (fpr, tpr) in sweep order plus the area under them."""

    points: tuple[tuple[float, float], ...]
    auc: float


def roc_curve(scores, labels) -> RocCurve:
    """Threshold-sweep ROC with tied scores grouped; trapezoidal area.

    labels mark the positive class; both classes must be nonempty.
    """
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels, dtype=bool)
    if scores.shape != labels.shape or scores.ndim != 1:
        raise ValueError("scores and labels must be matching 1-d arrays")
    pos = int(labels.sum())
    neg = labels.size - pos
    if pos == 0 or neg == 0:
        raise ValueError("roc needs at least one positive and one negative example")
    order = np.argsort(-scores, kind="stable")
    ranked_scores = scores[order]
    ranked_labels = labels[order]
    points = [(0.0, 0.0)]
    tp = fp = 0
    auc = 0.0
    prev_fpr = prev_tpr = 0.0
    i = 0
    n = scores.size
    while i < n:
        cut = ranked_scores[i]
        while i < n and ranked_scores[i] == cut:
            if ranked_labels[i]:
                tp += 1
            else:
                fp += 1
            i += 1
        fpr = fp / neg
        tpr = tp / pos
        auc += (fpr - prev_fpr) * (tpr + prev_tpr) / 2
        points.append((fpr, tpr))
        prev_fpr, prev_tpr = fpr, tpr
    return RocCurve(tuple(points), auc)


def roc_auc(scores, labels) -> float:
    return roc_curve(scores, labels).auc


@dataclass(frozen=True)
class CurvePoint:
    """One learning-curve cell: a method's AUC on one digit at one size."""

    method: str
    param: str
    train_size: int
    digit: int
    auc: float
    macro_auc: float


def _method_token(method: str, param: str) -> str:
    if method == "gl-limit":
        return method
    if method == "gl-mu":
        return f"gl-mu{param}"
    return f"knn-k{param}"


def learning_curve(train: ImageSet, test: ImageSet, sizes=(100, 300, 1000),
                   mus=(0.8,), include_limit: bool = True, ks=(1, 3, 5),
                   threshold: int = DEFAULT_THRESHOLD, test_size: int = 1000,
                   out_dir=None) -> tuple[CurvePoint, ...]:
    """One-vs-rest AUC per digit for each method and training-set size.

    Methods: the limit-regime predictor, a fixed-mu predictor per value in
    mus, and the Hamming k-nearest-neighbour baseline per value in ks.
    Prefixes of the given sets are used throughout. When out_dir is given,
    writes learning_curve.csv and, for the largest size, one
    roc_<method>_<digit>.csv per method and digit.
    """
    sizes = tuple(sorted({int(s) for s in sizes}))
    if not sizes or sizes[0] < 1:
        raise ValueError("sizes must be positive")
    if sizes[-1] > len(train):
        raise ValueError(f"largest size {sizes[-1]} exceeds the {len(train)} training images")
    subset_test = test.take(min(test_size, len(test)))
    test_bits = binarize(subset_test.images, threshold)
    test_packed = np.packbits(test_bits, axis=1, bitorder="little")
    test_labels = np.asarray(subset_test.labels, dtype=np.int64)

    methods: list[tuple[str, str]] = []
    if include_limit:
        methods.append(("gl-limit", ""))
    methods.extend(("gl-mu", str(mu)) for mu in mus)
    methods.extend(("knn", str(int(k))) for k in ks)

    points: list[CurvePoint] = []
    roc_out: dict[tuple[str, int], RocCurve] = {}
    for size in sizes:
        subset = train.take(size)
        train_bits = binarize(subset.images, threshold)
        train_ds = image_dataset(subset, threshold)
        for method, param in methods:
            if method == "knn":
                scores = knn_scores(train_bits, subset.labels, test_bits, int(param))
            else:
                regime = LIMIT_ONE if method == "gl-limit" else fixed(float(param))
                scores = np.zeros((len(subset_test), N_DIGITS))
                for i, row in enumerate(test_packed):
                    post = predict_digit(train_ds, int.from_bytes(row.tobytes(), "little"),
                                         regime)
                    scores[i] = [float(x) for x in post]
            aucs = []
            for digit in range(N_DIGITS):
                curve = roc_curve(scores[:, digit], test_labels == digit)
                aucs.append(curve.auc)
                if size == sizes[-1]:
                    roc_out[(_method_token(method, param), digit)] = curve
            macro = sum(aucs) / N_DIGITS
            points.extend(
                CurvePoint(method, param, size, digit, aucs[digit], macro)
                for digit in range(N_DIGITS)
            )
    if out_dir is not None:
        _write_curve_files(points, roc_out, out_dir)
    return tuple(points)


def _write_curve_files(points, roc_out, out_dir) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "learning_curve.csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["method", "param", "train_size", "digit", "auc", "macro_auc"])
        for pt in points:
            writer.writerow([pt.method, pt.param, pt.train_size, pt.digit,
                             f"{pt.auc:.6f}", f"{pt.macro_auc:.6f}"])
    for (token, digit), curve in roc_out.items():
        with open(out / f"roc_{token}_{digit}.csv", "w", encoding="utf-8",
                  newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["fpr", "tpr"])
            writer.writerows((f"{f:.6f}", f"{t:.6f}") for f, t in curve.points)


_IDX_NAMES = {
    "train_images": "train-images-idx3-ubyte",
    "train_labels": "train-labels-idx1-ubyte",
    "test_images": "t10k-images-idx3-ubyte",
    "test_labels": "t10k-labels-idx1-ubyte",
}


def locate_idx_files(root=None):
    """Find the four classic idx files (possibly .gz) under a directory.

    Searches root when given, else $GENLOGIC_MNIST_DIR, else ./data/mnist.
    Returns a name-to-path dict, or None when any file is missing.
    """
    candidates = []
    if root is not None:
        candidates.append(Path(root))
    else:
        env = os.environ.get("GENLOGIC_MNIST_DIR")
        if env:
            candidates.append(Path(env))
        candidates.append(Path("data") / "mnist")
    for base in candidates:
        found = {}
        for key, name in _IDX_NAMES.items():
            for candidate in (base / name, base / (name + ".gz")):
                if candidate.is_file():
                    found[key] = candidate
                    break
        if len(found) == len(_IDX_NAMES):
            return found
    return None


def load_split(root=None, synthetic_dir="data/synthetic-mnist", seed: int = 0):
    """The train/test image sets: real idx files when present, else synthetic.

    Returns (train, test, synthetic) where the flag records the fallback.
    An explicitly given root must hold the files; only the default search
    (environment variable, then ./data/mnist) may fall back to synthetic
    digits, written once under synthetic_dir with the classic idx names and
    reused on later calls.
    """
    found = locate_idx_files(root)
    synthetic = False
    if found is None and root is not None:
        raise OSError(f"no idx files under {os.fspath(root)}")
    if found is None:
        from .synthdata import ensure_synthetic_idx
        ensure_synthetic_idx(synthetic_dir, seed=seed)
        found = locate_idx_files(synthetic_dir)
        if found is None:
            raise OSError(f"could not provision image files under {synthetic_dir}")
        synthetic = True
    train = load_image_set(found["train_images"], found["train_labels"])
    test = load_image_set(found["test_images"], found["test_labels"])
    return train, test, synthetic

"""Skip-gram geographic embeddings.

Tokens are the items of extracted geographic sequences (division names plus
location entities), so divisions and the words that surround them share one
embedding space. Training maximizes

    L = Σ_s Σ_i Σ_{j ∈ [-n, n], j ≠ 0}  log P(w_{i+j} | w_i)

with P the full softmax over the vocabulary of the input·output vector dot
product. Full softmax is exact and is the default at this vocabulary scale;
negative sampling is available as an opt-in approximation for large vocabs.

Everything is deterministic given the seed: the vocabulary is the sorted
token set, initialization comes from a seeded generator, and updates run in
a fixed order (no shuffling, no thread races).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

log = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class TrainConfig:
    dim: int = 100
    window: int = 5
    epochs: int = 5
    learning_rate: float = 0.025
    seed: int = 42
    softmax_mode: str = "full"  # "full" | "negative_sampling"
    negative_k: int = 5
    min_lr_factor: float = 1e-4  # linear decay floor, as a fraction of learning_rate
    track_objective: bool = True

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be ≥ 1")
        if self.window < 1:
            raise ValueError("window must be ≥ 1")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be > 0")
        if self.softmax_mode not in ("full", "negative_sampling"):
            raise ValueError(f"unknown softmax_mode {self.softmax_mode!r}")
        if self.softmax_mode == "negative_sampling" and self.negative_k < 1:
            raise ValueError("negative_k must be ≥ 1")


@dataclass(frozen=True)
class EmbeddingTable:
    vocab: tuple[str, ...]
    input_vectors: np.ndarray  # |V| × d, the query-time representation
    output_vectors: np.ndarray  # |V| × d, kept for resumable training
    index: dict[str, int] = field(repr=False, default_factory=dict)
    epoch_objectives: tuple[float, ...] = ()

    def __post_init__(self):
        if not self.index:
            object.__setattr__(
                self, "index", {t: i for i, t in enumerate(self.vocab)}
            )
        if len(self.vocab) != len(self.index):
            raise ValueError("vocabulary contains duplicate tokens")
        for mat, name in ((self.input_vectors, "input"), (self.output_vectors, "output")):
            if mat.shape != (len(self.vocab), self.dim):
                raise ValueError(f"{name} matrix shape {mat.shape} does not match vocab")
            if not np.isfinite(mat).all():
                raise ValueError(f"{name} vectors contain NaN/Inf")

    @property
    def dim(self) -> int:
        return self.input_vectors.shape[1]

    def __contains__(self, token: str) -> bool:
        return token in self.index

    def vector(self, token: str) -> np.ndarray:
        try:
            return self.input_vectors[self.index[token]]
        except KeyError:
            raise ValueError(f"token {token!r} not in vocabulary") from None


def _token_lists(sequences: Iterable) -> list[list[str]]:
    """Accept GeoSequences or plain token lists."""
    lists = []
    for seq in sequences:
        items = getattr(seq, "items", None)
        if items is not None:
            lists.append([it.surface for it in items])
        else:
            lists.append(list(seq))
    return lists


def _log_softmax(scores: np.ndarray) -> np.ndarray:
    shifted = scores - scores.max()
    return shifted - math.log(np.exp(shifted).sum())


def softmax_prob(table: EmbeddingTable, center: str, context: str) -> float:
    """P(context | center) under the full softmax."""
    c = table.index.get(center)
    x = table.index.get(context)
    if c is None or x is None:
        missing = center if c is None else context
        raise ValueError(f"token {missing!r} not in vocabulary")
    scores = table.output_vectors @ table.input_vectors[c]
    return float(np.exp(_log_softmax(scores))[x])


def _context_pairs(
    token_lists: Sequence[Sequence[int]], window: int
) -> list[tuple[int, int]]:
    """(center, context) vocabulary-index pairs in deterministic text order."""
    pairs: list[tuple[int, int]] = []
    for idxs in token_lists:
        m = len(idxs)
        for i, c in enumerate(idxs):
            for j in range(max(0, i - window), min(m, i + window + 1)):
                if j != i:
                    pairs.append((c, idxs[j]))
    return pairs


def _index_lists(sequences: Iterable, index: dict[str, int]) -> list[list[int]]:
    lists = []
    for tokens in _token_lists(sequences):
        try:
            lists.append([index[t] for t in tokens])
        except KeyError as exc:
            raise ValueError(f"token {exc.args[0]!r} not in vocabulary") from None
    return lists


def objective(table: EmbeddingTable, sequences: Iterable, window: int) -> float:
    """Total log-likelihood of all in-window context pairs; always ≤ 0."""
    total = 0.0
    for idxs in _index_lists(sequences, table.index):
        m = len(idxs)
        for i, c in enumerate(idxs):
            ctx = [idxs[j] for j in range(max(0, i - window), min(m, i + window + 1)) if j != i]
            if not ctx:
                continue
            logp = _log_softmax(table.output_vectors @ table.input_vectors[c])
            total += float(logp[ctx].sum())
    return total


def objective_gradients(
    table: EmbeddingTable, sequences: Iterable, window: int
) -> tuple[np.ndarray, np.ndarray]:
    """Analytic ∂L/∂input_vectors and ∂L/∂output_vectors.

    Matches ``objective`` exactly; verified in the test suite against central
    finite differences.
    """
    V = table.input_vectors
    U = table.output_vectors
    grad_v = np.zeros_like(V)
    grad_u = np.zeros_like(U)
    for idxs in _index_lists(sequences, table.index):
        m = len(idxs)
        for i, c in enumerate(idxs):
            ctx = [idxs[j] for j in range(max(0, i - window), min(m, i + window + 1)) if j != i]
            if not ctx:
                continue
            p = np.exp(_log_softmax(U @ V[c]))
            err = -len(ctx) * p
            for x in ctx:
                err[x] += 1.0
            grad_v[c] += U.T @ err
            grad_u += np.outer(err, V[c])
    return grad_v, grad_u


def train(sequences: Iterable, config: TrainConfig = TrainConfig()) -> EmbeddingTable:
    """Gradient-ascent skip-gram training; deterministic given the seed."""
    token_lists = _token_lists(sequences)
    if not token_lists:
        raise ValueError("no sequences to train on")
    vocab = tuple(sorted({t for tokens in token_lists for t in tokens}))
    if len(vocab) < 2:
        raise ValueError("vocabulary must contain at least 2 tokens")
    index = {t: i for i, t in enumerate(vocab)}
    idx_lists = [[index[t] for t in tokens] for tokens in token_lists]
    pairs = _context_pairs(idx_lists, config.window)
    if not pairs:
        raise ValueError(
            "no context pairs: every sequence has a single token "
            f"(window={config.window})"
        )

    rng = np.random.default_rng(config.seed)
    d = config.dim
    V = (rng.random((len(vocab), d)) - 0.5) / d  # input vectors
    U = np.zeros((len(vocab), d))  # output vectors

    noise = None
    if config.softmax_mode == "negative_sampling":
        counts = np.zeros(len(vocab))
        for idxs in idx_lists:
            for i in idxs:
                counts[i] += 1
        noise = counts**0.75
        noise /= noise.sum()

    lr0 = config.learning_rate
    total_updates = config.epochs * len(pairs)
    history: list[float] = []
    done = 0
    for epoch in range(config.epochs):
        for c, x in pairs:
            lr = max(lr0 * (1 - done / total_updates), lr0 * config.min_lr_factor)
            v_c = V[c]
            if config.softmax_mode == "full":
                scores = U @ v_c
                if not np.isfinite(scores).all():
                    raise RuntimeError(
                        f"non-finite scores at update {done}: "
                        "learning rate is diverging, lower it"
                    )
                shifted = scores - scores.max()
                p = np.exp(shifted)
                p /= p.sum()
                p[x] -= 1.0  # now -err: p - onehot(x)
                grad_v = U.T @ p
                U -= lr * np.outer(p, v_c)
                V[c] = v_c - lr * grad_v
            else:
                negatives = rng.choice(len(vocab), size=config.negative_k, p=noise)
                grad_v = np.zeros(d)
                for t, label in [(x, 1.0)] + [(int(n), 0.0) for n in negatives]:
                    z = float(U[t] @ v_c)
                    sig = 1.0 / (1.0 + math.exp(-z)) if z > -60 else 0.0
                    coef = label - sig
                    grad_v += coef * U[t]
                    U[t] += lr * coef * v_c
                V[c] = v_c + lr * grad_v
            done += 1
        if config.track_objective:
            snapshot = EmbeddingTable(vocab, V.copy(), U.copy())
            history.append(objective(snapshot, token_lists, config.window))
            log.info("epoch %d/%d objective %.6f", epoch + 1, config.epochs, history[-1])

    if not (np.isfinite(V).all() and np.isfinite(U).all()):
        raise RuntimeError("training produced non-finite vectors; lower the learning rate")
    return EmbeddingTable(vocab, V, U, epoch_objectives=tuple(history))


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    na = float(np.linalg.norm(a))
    nb = float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(a @ b) / (na * nb)


def kmeans_clusters(
    table: EmbeddingTable, ad_tokens: Iterable[str], k: int, seed: int = 42
) -> dict[str, int]:
    """Cluster division embeddings with k-means; deterministic given seed."""
    from sklearn.cluster import KMeans

    if k <= 0:
        raise ValueError("k must be positive")
    seen: list[str] = []
    for t in ad_tokens:
        if t in table.index and t not in seen:
            seen.append(t)
    if not seen:
        raise ValueError("none of the division tokens is in the vocabulary")
    if k > len(seen):
        raise ValueError(f"k={k} exceeds the {len(seen)} division tokens in vocabulary")
    X = np.stack([table.input_vectors[table.index[t]] for t in seen])
    km = KMeans(n_clusters=k, random_state=seed, n_init=10)
    labels = km.fit_predict(X)
    return {t: int(l) for t, l in zip(seen, labels)}


# ---------------------------------------------------------------------------
# Persistence — text format:
#   line 1: "<vocab_size> <dim>"
#   then one line per token: token, then dim decimal floats, space-separated.
# A parallel "<path>.out" file holds the output vectors in the same layout.
# ---------------------------------------------------------------------------


def _write_matrix(vocab: tuple[str, ...], mat: np.ndarray, path: Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{len(vocab)} {mat.shape[1]}\n")
        for token, row in zip(vocab, mat):
            fh.write(token + " " + " ".join(repr(float(x)) for x in row) + "\n")


def save_embeddings(table: EmbeddingTable, path: str | Path) -> None:
    path = Path(path)
    for token in table.vocab:
        if not token or any(ch.isspace() for ch in token):
            raise ValueError(f"token {token!r} cannot be stored in the text format")
    _write_matrix(table.vocab, table.input_vectors, path)
    _write_matrix(table.vocab, table.output_vectors, path.with_name(path.name + ".out"))


def _read_matrix(path: Path) -> tuple[tuple[str, ...], np.ndarray]:
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ValueError(f"{path}: malformed header")
        size, dim = int(header[0]), int(header[1])
        vocab: list[str] = []
        rows = np.empty((size, dim))
        for i in range(size):
            parts = fh.readline().rstrip("\n").split(" ")
            if len(parts) != dim + 1:
                raise ValueError(f"{path}: malformed row {i + 2}")
            vocab.append(parts[0])
            rows[i] = [float(x) for x in parts[1:]]
        if fh.readline():
            raise ValueError(f"{path}: trailing data after {size} rows")
    return tuple(vocab), rows


def load_embeddings(path: str | Path) -> EmbeddingTable:
    path = Path(path)
    vocab, inp = _read_matrix(path)
    out_path = path.with_name(path.name + ".out")
    if out_path.exists():
        out_vocab, out = _read_matrix(out_path)
        if out_vocab != vocab:
            raise ValueError(f"{out_path}: vocabulary differs from {path}")
    else:
        log.warning("%s missing; output vectors zeroed (training not resumable)", out_path)
        out = np.zeros_like(inp)
    return EmbeddingTable(vocab, inp, out)

"""Brute-force reference computations, written without numpy on purpose."""

FIGURE_A = [
    [0, 0, 1, 1, 0, 0],
    [0, 1, 0, 0, 1, 0],
    [1, 0, 0, 0, 0, 1],
    [1, 0, 0, 0, 0, 1],
    [1, 1, 1, 1, 1, 1],
    [1, 0, 0, 0, 0, 1],
    [1, 0, 0, 0, 0, 1],
    [1, 0, 0, 0, 0, 1],
]


def outer_product_sum(pairs, dim, n_classes):
    """Sum of input[d] * target[c] over a training log of (vector, class)."""
    weights = [[0] * n_classes for _ in range(dim)]
    for vector, cls in pairs:
        target = [1 if c == cls else 0 for c in range(n_classes)]
        for d in range(dim):
            for c in range(n_classes):
                weights[d][c] += vector[d] * target[c]
    return weights


def dot_argmax(weights, vector):
    """Explicit per-column dot product; first maximum wins."""
    dim, n_classes = len(weights), len(weights[0])
    best, best_score = 0, None
    for c in range(n_classes):
        score = 0
        for d in range(dim):
            score += vector[d] * weights[d][c]
        if best_score is None or score > best_score:
            best, best_score = c, score
    return best


def sylvester(order):
    """Sylvester Hadamard matrix of the given power-of-two order, as lists."""
    h = [[1]]
    while len(h) < order:
        h = [row + row for row in h] + [row + [-v for v in row] for row in h]
    return h


def hamming(a, b):
    return sum(x != y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def bounding_box(rows):
    """Crop a list-of-lists bitmap to its inked rows and columns."""
    ink_rows = [i for i, r in enumerate(rows) if any(r)]
    ink_cols = [j for j in range(len(rows[0])) if any(r[j] for r in rows)]
    return [r[ink_cols[0] : ink_cols[-1] + 1] for r in rows[ink_rows[0] : ink_rows[-1] + 1]]

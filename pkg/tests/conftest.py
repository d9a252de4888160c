"""Shared test plumbing: a plateau-safe 2-D peak detector, plus the
acceptance-criterion recorder whose lines re-emit in the terminal summary."""

import numpy as np

criterion_lines = []


def find_local_maxima(values, threshold_frac=0.01, min_separation=6):
    """Interior local maxima of a 2-D array, as (rows, cols) index arrays.

    A cell qualifies if it beats its 8 neighbours, strictly for neighbours
    earlier in scan order and non-strictly for later ones, so a two-cell
    plateau (mirror-symmetric grids produce them) yields exactly one peak.
    Near-flat lobes can shed duplicate grid maxima a couple of cells apart;
    greedy suppression keeps only the strongest peak within min_separation.
    """
    v = np.asarray(values)
    c = v[1:-1, 1:-1]
    mask = c > threshold_frac * v.max()
    for earlier in (v[:-2, :-2], v[:-2, 1:-1], v[:-2, 2:], v[1:-1, :-2]):
        mask &= c > earlier
    for later in (v[1:-1, 2:], v[2:, :-2], v[2:, 1:-1], v[2:, 2:]):
        mask &= c >= later
    rows, cols = np.nonzero(mask)
    rows, cols = rows + 1, cols + 1
    order = np.argsort(-v[rows, cols], kind="stable")
    keep_r, keep_c = [], []
    for idx in order:
        r, col = int(rows[idx]), int(cols[idx])
        if all((r - kr) ** 2 + (col - kc) ** 2 >= min_separation**2
               for kr, kc in zip(keep_r, keep_c)):
            keep_r.append(r)
            keep_c.append(col)
    return np.array(keep_r, dtype=int), np.array(keep_c, dtype=int)


def record_criterion(name, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] {name}" + (f": {detail}" if detail else "")
    criterion_lines.append(line)
    print(line)
    assert ok, f"{name}: {detail}"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if criterion_lines:
        terminalreporter.section("acceptance criteria")
        for line in criterion_lines:
            terminalreporter.write_line(line)

"""Shift/rotation data files: whitespace-separated decimal text.

One block per function, in suite order:

    f<index> <n_components>
    <d shift values>                 } repeated per component
    <d rows of d matrix values>      } (rows only when the slot is rotated)

An unrotated component writes no matrix rows. Matrices are validated as
orthogonal on load, so officially published data can be substituted for the
seed-generated suite without code changes.
"""

import numpy as np

from iurlab.benchmarks import suite as suite_mod

ORTHOGONALITY_TOL = 1e-10


class SuiteDataError(ValueError):
    """Malformed or inconsistent suite data file."""


def save_suite_data(spec: suite_mod.SuiteSpec, path):
    lines = []
    for fn in spec.functions:
        lines.append(f"f{fn.index} {len(fn.components)}")
        for comp in fn.components:
            lines.append(" ".join(repr(float(v)) for v in comp.shift))
            if comp.rotation is not None:
                for row in comp.rotation:
                    lines.append(" ".join(repr(float(v)) for v in row))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def check_orthogonal(matrix, where=""):
    d = matrix.shape[0]
    err = np.max(np.abs(matrix.T @ matrix - np.eye(d)))
    if err > ORTHOGONALITY_TOL:
        raise SuiteDataError(f"matrix {where} not orthogonal (error {err:.3e})")


def load_external_data(path, d: int, seed: int = 0) -> suite_mod.SuiteSpec:
    """Rebuild a SuiteSpec with shifts/rotations read from ``path``.

    The template (which slots exist, which are rotated, scales/offsets)
    comes from the suite layout; only the numbers are replaced.
    """
    template = suite_mod.make_suite_spec(d, seed)
    with open(path) as fh:
        raw = fh.read().splitlines()

    lineno = 0

    def next_line(context):
        nonlocal lineno
        while lineno < len(raw):
            line = raw[lineno].strip()
            lineno += 1
            if line and not line.startswith("#"):
                return line
        raise SuiteDataError(f"unexpected end of file while reading {context}")

    def parse_floats(line, count, context):
        parts = line.split()
        if len(parts) != count:
            raise SuiteDataError(
                f"line {lineno}: expected {count} values for {context}, got {len(parts)}"
            )
        try:
            return np.array([float(p) for p in parts])
        except ValueError as exc:
            raise SuiteDataError(f"line {lineno}: {exc} in {context}") from exc

    functions = []
    for fn in template.functions:
        header = next_line(f"header of f{fn.index}")
        parts = header.split()
        if len(parts) != 2 or parts[0] != f"f{fn.index}":
            raise SuiteDataError(
                f"line {lineno}: expected block header 'f{fn.index} <n>', got {header!r}"
            )
        if int(parts[1]) != len(fn.components):
            raise SuiteDataError(
                f"line {lineno}: f{fn.index} declares {parts[1]} components, "
                f"suite layout has {len(fn.components)}"
            )
        comps = []
        for ci, comp in enumerate(fn.components):
            where = f"f{fn.index} component {ci + 1}"
            shift = parse_floats(next_line(f"shift of {where}"), d, f"shift of {where}")
            rotation = None
            if comp.rotation is not None:
                rows = [
                    parse_floats(next_line(f"matrix of {where}"), d, f"matrix of {where}")
                    for _ in range(d)
                ]
                rotation = np.array(rows)
                check_orthogonal(rotation, where)
            comps.append(
                suite_mod.ComponentSpec(comp.kernel, shift, rotation, comp.scale, comp.offset)
            )
        functions.append(
            suite_mod.FunctionSpec(fn.index, fn.name, tuple(comps), fn.sigmas)
        )
    trailing = [ln for ln in raw[lineno:] if ln.strip() and not ln.strip().startswith("#")]
    if trailing:
        raise SuiteDataError(f"line {lineno + 1}: trailing data after last block")
    return suite_mod.SuiteSpec(d, seed, tuple(functions))

"""Cached artifacts: vertex/facet lists, class tables and analysis CSVs.

A workspace is a directory holding the expensive enumeration outputs plus a
manifest recording, per artifact, the file name, its sha256 digest, the
producing command and the package version. Artifacts are written once and
reloaded on demand; all files are deterministic byte-for-byte.
"""

from __future__ import annotations

import csv
import hashlib
import json
import logging
import multiprocessing
import os
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Optional, Sequence

from gmpy2 import mpq

from . import __version__
from .boxes import Box, box_from_line, box_to_line
from .facets import (
    InequalityClass,
    class_functional,
    corr_homog_scaled,
    facet_orbit_partition,
    local_polytope_facets,
    ns_max_fast,
    prob_tables_hom_matrix,
    violation_thresholds,
)
from .hierarchy import (
    MODEL_SETS,
    SEQUENCES,
    noise_resistance,
    sequence_noise_resistance,
)
from .rational import format_rational
from .scenarios import enumerate_bipartite_vertices, enumerate_tripartite_vertices
from .symmetry import ClassEntry, ClassTable, orbit_partition

log = logging.getLogger(__name__)

LOCK_NAME = "nspoly.lock"
MANIFEST_NAME = "manifest.json"


def default_workspace_path() -> str:
    return os.environ.get(
        "NSPOLY_WORKSPACE", os.path.join(os.path.expanduser("~"), ".cache", "nspoly")
    )


class WorkspaceLockedError(RuntimeError):
    pass


class ArtifactError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# file formats

def _write_table_file(path: str, kind: str, rows: Sequence[Sequence], extra=""):
    with open(path, "w") as f:
        f.write(f"# nspoly {kind} v1 count={len(rows)}{extra}\n")
        for row in rows:
            f.write(" ".join(str(v) for v in row) + "\n")


def _read_table_file(path: str, kind: str) -> list[list[str]]:
    with open(path) as f:
        header = f.readline().split()
        if header[:2] != ["#", "nspoly"] or header[2] != kind:
            raise ArtifactError(f"{path}: not a {kind} file")
        count = int(next(t for t in header if t.startswith("count=")).split("=")[1])
        rows = [line.split() for line in f if line.strip()]
    if len(rows) != count:
        raise ArtifactError(f"{path}: expected {count} rows, found {len(rows)}")
    return rows


def write_vertex_file(path: str, vertices: Sequence[tuple]):
    """Each vertex one line of rational probability tokens."""
    _write_table_file(
        path, "vertices", [[format_rational(v) for v in vert] for vert in vertices]
    )


def read_vertex_file(path: str) -> list[tuple]:
    return [tuple(mpq(t) for t in row) for row in _read_table_file(path, "vertices")]


def write_facet_file(path: str, facets: Sequence[tuple]):
    _write_table_file(path, "facets", facets)


def read_facet_file(path: str) -> list[tuple]:
    return [tuple(int(t) for t in row) for row in _read_table_file(path, "facets")]


def write_class_file(path: str, table: ClassTable):
    total = sum(c.size for c in table.classes)
    with open(path, "w") as f:
        f.write(f"# nspoly classes v1 count={len(table.classes)} total={total}\n")
        for c in table.classes:
            f.write(f"class {c.class_id} size {c.size}\n")
            f.write("rep " + box_to_line(c.representative) + "\n")
            f.write("members " + " ".join(map(str, c.member_indices)) + "\n")


def read_class_file(path: str) -> ClassTable:
    classes = []
    with open(path) as f:
        header = f.readline().split()
        if header[2] != "classes":
            raise ArtifactError(f"{path}: not a class file")
        while True:
            line = f.readline()
            if not line.strip():
                break
            _, cid, _, size = line.split()
            rep = box_from_line(f.readline().split(" ", 1)[1])
            members = [int(t) for t in f.readline().split()[1:]]
            classes.append(ClassEntry(int(cid), rep, int(size), members))
            if len(members) != int(size):
                raise ArtifactError(f"{path}: class {cid} member count mismatch")
    return ClassTable(classes)


def write_ineq_class_file(path: str, classes: Sequence[InequalityClass]):
    total = sum(c.size for c in classes)
    with open(path, "w") as f:
        f.write(f"# nspoly ineq-classes v1 count={len(classes)} total={total}\n")
        for c in classes:
            f.write(f"class {c.class_id} size {c.size} name {c.name or '-'}\n")
            f.write("rep " + " ".join(map(str, c.representative)) + "\n")
            f.write("members " + " ".join(map(str, c.member_indices)) + "\n")


def read_ineq_class_file(path: str) -> list[InequalityClass]:
    classes = []
    with open(path) as f:
        header = f.readline().split()
        if header[2] != "ineq-classes":
            raise ArtifactError(f"{path}: not an inequality-class file")
        while True:
            line = f.readline()
            if not line.strip():
                break
            _, cid, _, size, _, name = line.split()
            rep = tuple(int(t) for t in f.readline().split()[1:])
            members = [int(t) for t in f.readline().split()[1:]]
            classes.append(
                InequalityClass(
                    int(cid), rep, int(size), members, None if name == "-" else name
                )
            )
    return classes


def write_csv(path: str, header: Sequence[str], rows: Sequence[Sequence]):
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def read_csv(path: str) -> tuple[list[str], list[list[str]]]:
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    return rows[0], rows[1:]


def _format(value) -> str:
    return format_rational(mpq(value))


# ---------------------------------------------------------------------------
# noise-table worker (module level so it can cross process boundaries)

def _noise_row_task(args):
    cid, probs = args
    row = tuple(noise_resistance(Box(probs), m) for m in MODEL_SETS)
    log.info("noise row for class %d: %s", cid, row)
    return cid, row


@dataclass
class Workspace:
    path: str

    def __init__(self, path: Optional[str] = None):
        self.path = path or default_workspace_path()
        os.makedirs(self.path, exist_ok=True)

    # -- manifest -----------------------------------------------------------

    def _file(self, name: str) -> str:
        return os.path.join(self.path, name)

    def _manifest(self) -> dict:
        try:
            with open(self._file(MANIFEST_NAME)) as f:
                return json.load(f)
        except FileNotFoundError:
            return {}

    def _record(self, artifact: str, filename: str, command: str):
        manifest = self._manifest()
        manifest[artifact] = {
            "file": filename,
            "sha256": _digest(self._file(filename)),
            "command": command,
            "version": __version__,
        }
        with open(self._file(MANIFEST_NAME), "w") as f:
            json.dump(manifest, f, indent=2, sort_keys=True)
            f.write("\n")

    def artifact_path(self, artifact: str) -> Optional[str]:
        """The verified path of a cached artifact, or None if absent."""
        entry = self._manifest().get(artifact)
        if entry is None:
            return None
        path = self._file(entry["file"])
        if not os.path.exists(path):
            return None
        if _digest(path) != entry["sha256"]:
            raise ArtifactError(
                f"artifact {artifact!r}: digest mismatch for {path} "
                "(file corrupted or edited; delete it to recompute)"
            )
        return path

    @contextmanager
    def lock(self):
        """One command at a time per workspace."""
        lockfile = self._file(LOCK_NAME)
        try:
            fd = os.open(lockfile, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
        except FileExistsError:
            raise WorkspaceLockedError(
                f"workspace {self.path} is locked by another command "
                f"(remove {lockfile} if that command crashed)"
            )
        try:
            os.write(fd, str(os.getpid()).encode())
            os.close(fd)
            yield
        finally:
            os.remove(lockfile)

    # -- enumeration artifacts ---------------------------------------------

    def vertices(self, scenario: str = "tripartite") -> list[tuple]:
        """Vertex probability tables for the scenario, cached."""
        artifact = f"vertices-{scenario}"
        path = self.artifact_path(artifact)
        if path is not None:
            return read_vertex_file(path)
        if scenario == "tripartite":
            verts = [b.probabilities for b in enumerate_tripartite_vertices()]
        elif scenario == "bipartite":
            verts = enumerate_bipartite_vertices()
        else:
            raise ValueError(f"unknown scenario {scenario!r}")
        filename = f"{artifact}.txt"
        write_vertex_file(self._file(filename), verts)
        self._record(artifact, filename, "enumerate")
        return verts

    def vertex_boxes(self) -> list[Box]:
        return [Box(v) for v in self.vertices()]

    def classes(self) -> ClassTable:
        path = self.artifact_path("classes")
        if path is not None:
            return read_class_file(path)
        table = orbit_partition(self.vertex_boxes())
        write_class_file(self._file("classes.txt"), table)
        self._record("classes", "classes.txt", "classify")
        return table

    def facets(self) -> list[tuple]:
        path = self.artifact_path("facets")
        if path is not None:
            return read_facet_file(path)
        facets = sorted(local_polytope_facets())
        write_facet_file(self._file("facets.txt"), facets)
        self._record("facets", "facets.txt", "analyze")
        return facets

    def ineq_classes(self) -> list[InequalityClass]:
        path = self.artifact_path("ineq-classes")
        if path is not None:
            return read_ineq_class_file(path)
        classes = facet_orbit_partition(self.facets())
        write_ineq_class_file(self._file("ineq-classes.txt"), classes)
        self._record("ineq-classes", "ineq-classes.txt", "analyze")
        return classes

    # -- analysis artifacts --------------------------------------------------

    def noise_table(self, threads: int = 1) -> list[tuple]:
        """Per vertex class (canonical order) the (L, NS2, US2, KS2, S2)
        noise resistances."""
        path = self.artifact_path("noise-table")
        if path is not None:
            _, rows = read_csv(path)
            return [tuple(mpq(v) for v in row[1:]) for row in rows]
        table = self.classes()
        tasks = [
            (c.class_id, c.representative.probabilities) for c in table.classes
        ]
        if threads > 1:
            with multiprocessing.Pool(threads) as pool:
                results = pool.map(_noise_row_task, tasks)
        else:
            results = [_noise_row_task(t) for t in tasks]
        rows = [row for _, row in sorted(results)]
        write_csv(
            self._file("noise-table.csv"),
            ["class"] + list(MODEL_SETS),
            [[cid] + [_format(v) for v in row] for cid, row in enumerate(rows)],
        )
        self._record("noise-table", "noise-table.csv", "analyze")
        return rows

    def ks2_sequence_table(self) -> list[tuple]:
        """Per vertex class (canonical order) the six per-sequence noise
        resistances, ordered like hierarchy.SEQUENCES.

        The KS2 column of the noise table is the row-wise maximum. The
        per-sequence values are kept separately because a single sequence's
        threshold depends on the orientation of the representative: party
        permutations permute the six values, so only their multiset is a
        class invariant.
        """
        path = self.artifact_path("ks2-sequences")
        if path is not None:
            _, rows = read_csv(path)
            return [tuple(mpq(v) for v in row[1:]) for row in rows]
        table = self.classes()
        rows = []
        for c in table.classes:
            row = tuple(
                sequence_noise_resistance(c.representative, sigma)
                for sigma in SEQUENCES
            )
            log.info("ks2 sequence row for class %d: %s", c.class_id, row)
            rows.append(row)
        write_csv(
            self._file("ks2-sequences.csv"),
            ["class"] + list(SEQUENCES),
            [[cid] + [_format(v) for v in row] for cid, row in enumerate(rows)],
        )
        self._record("ks2-sequences", "ks2-sequences.csv", "analyze")
        return rows

    def _vertex_class_data(self):
        table = self.classes()
        vmat = prob_tables_hom_matrix(self.vertices())
        class_of = table.class_of()
        return table, vmat, [class_of[i] for i in range(len(vmat))]

    def violations(self) -> list:
        """ViolationRecord per inequality class."""
        _, vmat, class_of = self._vertex_class_data()
        records = []
        for cls in self.ineq_classes():
            rec = ns_max_fast(
                class_functional(cls), vmat, class_of, cls.class_id, cls.name
            )
            records.append(rec)
        write_csv(
            self._file("violations.csv"),
            ["ineq_class", "name", "local_bound", "ns_max", "achieving_classes"],
            [
                [
                    r.inequality_class_id,
                    r.name or "-",
                    _format(r.local_bound),
                    _format(r.ns_max),
                    ";".join(map(str, r.achieving_vertex_classes)),
                ]
                for r in records
            ],
        )
        self._record("violations", "violations.csv", "analyze")
        return records

    def boundaries(self) -> list[tuple]:
        """(box_class, ineq_class, category, value) for all class pairs."""
        facets = self.facets()
        iclasses = self.ineq_classes()
        members = [c.member_indices for c in iclasses]
        table = self.classes()
        rows = []
        for entry in table.classes:
            hom = corr_homog_scaled(entry.representative)
            for cls, (cat, val) in zip(
                iclasses, violation_thresholds(facets, members, hom)
            ):
                rows.append((entry.class_id, cls.class_id, cat, val))
        write_csv(
            self._file("boundaries.csv"),
            ["box_class", "ineq_class", "category", "value"],
            [[b, i, c, _format(v)] for b, i, c, v in rows],
        )
        self._record("boundaries", "boundaries.csv", "analyze")
        return rows

    def correlator_flags(self) -> list[bool]:
        """Per vertex class: all 26 correlators in {-1, 0, 1}?"""
        table = self.classes()
        flags = []
        for entry in table.classes:
            hom = corr_homog_scaled(entry.representative)
            den = hom[0]
            flags.append(all(v % den == 0 for v in hom[1:]))
        write_csv(
            self._file("flags.csv"),
            ["class", "correlators_in_0_pm1"],
            [[cid, str(flag).lower()] for cid, flag in enumerate(flags)],
        )
        self._record("flags", "flags.csv", "analyze")
        return flags


def _digest(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()

"""Reference lists of almost affine classes and verification against them.

The data files hold one JSON document per class (label, size, printed
matrices, deletion annotations and, for the parametric rank-3 classes, the
quadratic constraint, the chosen root, the matrix templates and the reflection
table).  ``manifest.json`` records counts and a SHA-256 checksum per file.
Set ``ALMOST_AFFINE_FIXTURES`` to read them from another directory.
"""

from __future__ import annotations

import hashlib
import json
import os
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

from .cartan import (
    CartanError,
    CartanPair,
    canonical_form,
    canonical_order,
    check_zero_pattern,
    is_symmetrizable,
    normalize,
    pair_from_doc,
    principal_delete,
)
from .catalog import Catalog, classify_blocks, default_catalog

ENV_VAR = "ALMOST_AFFINE_FIXTURES"
NAMES = ("super", "even")


class FixtureCorrupt(ValueError):
    def __init__(self, message: str, label: Optional[str] = None):
        super().__init__(f"{label}: {message}" if label else message)
        self.label = label


@dataclass
class FixtureEntry:
    label: str
    size: int
    matrices: list
    annotations: list  # per printed matrix, per node: printed block names
    symmetrizable_prefix: bool
    constraint: Optional[tuple] = None
    root: Optional[str] = None
    transitions: Optional[list] = None
    templates: Optional[list] = None

    @property
    def parametric(self) -> bool:
        return self.constraint is not None

    @classmethod
    def from_doc(cls, doc: dict) -> "FixtureEntry":
        label = doc.get("label")
        try:
            mats = [pair_from_doc(d) for d in doc["matrices"]]
            entry = cls(
                label=label,
                size=int(doc["size"]),
                matrices=mats,
                annotations=[[list(a) for a in ann] for ann in doc["annotations"]],
                symmetrizable_prefix=bool(doc["symmetrizable_prefix"]),
                constraint=tuple(doc["constraint"]) if "constraint" in doc else None,
                root=doc.get("root"),
                transitions=doc.get("transitions"),
                templates=doc.get("templates"),
            )
        except (KeyError, TypeError, ValueError, CartanError) as exc:
            raise FixtureCorrupt(f"unreadable entry ({exc})", label) from None
        entry.validate()
        return entry

    def validate(self) -> None:
        if not self.matrices or len(self.annotations) != len(self.matrices):
            raise FixtureCorrupt("matrices and annotations do not line up", self.label)
        for p, ann in zip(self.matrices, self.annotations):
            if p.n != self.size:
                raise FixtureCorrupt("matrix size differs from entry size", self.label)
            try:
                check_zero_pattern(p)
            except CartanError as exc:
                raise FixtureCorrupt(str(exc), self.label) from None
            if len(ann) != self.size:
                raise FixtureCorrupt("annotation length differs from size", self.label)


def fixture_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(str(resources.files("almost_affine") / "data"))


def manifest(directory: Optional[Path] = None) -> dict:
    path = Path(directory or fixture_dir()) / "manifest.json"
    try:
        return json.loads(path.read_text())
    except (OSError, ValueError) as exc:
        raise FixtureCorrupt(f"cannot read manifest: {exc}") from None


def load_fixture(name: str, directory: Optional[Path] = None) -> list:
    """Entries of the "super" or "even" list, checked against the manifest."""
    if name not in NAMES:
        raise ValueError(f"unknown fixture {name!r}")
    directory = Path(directory or fixture_dir())
    info = manifest(directory)["fixtures"][name]
    try:
        raw = (directory / info["file"]).read_bytes()
    except OSError as exc:
        raise FixtureCorrupt(f"cannot read {info['file']}: {exc}") from None
    if hashlib.sha256(raw).hexdigest() != info["sha256"]:
        raise FixtureCorrupt(f"checksum mismatch for {info['file']}")
    entries = []
    seen = set()
    for line in raw.decode().splitlines():
        if not line.strip():
            continue
        try:
            doc = json.loads(line)
        except ValueError as exc:
            raise FixtureCorrupt(f"bad JSON line ({exc})") from None
        e = FixtureEntry.from_doc(doc)
        if e.label in seen:
            raise FixtureCorrupt("duplicate label", e.label)
        seen.add(e.label)
        entries.append(e)
    if len(entries) != info["count"]:
        raise FixtureCorrupt(f"{name}: expected {info['count']} entries, found {len(entries)}")
    return entries


# verification ----------------------------------------------------------------

@dataclass
class AnnotationMismatch:
    label: str
    matrix: int
    node: int
    expected: list
    computed: list


@dataclass
class VerifyReport:
    size: int
    mode: str
    matched: list = field(default_factory=list)  # (label, class index)
    missing: list = field(default_factory=list)  # fixture labels without a computed class
    extra: list = field(default_factory=list)  # computed class indices without an entry
    duplicates: list = field(default_factory=list)  # labels matching several classes or vice versa
    annotation_mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.missing or self.extra or self.duplicates or self.annotation_mismatches)

    def summary(self) -> str:
        total = len(self.matched) + len(self.missing)
        text = f"size {self.size} {self.mode}: {len(self.matched)}/{total} classes matched"
        if self.extra:
            text += f", {len(self.extra)} unexpected"
        if self.annotation_mismatches:
            text += f", {len(self.annotation_mismatches)} annotation mismatches"
        return text

    def to_doc(self) -> dict:
        return {
            "size": self.size,
            "mode": self.mode,
            "ok": self.ok,
            "summary": self.summary(),
            "matched": [list(m) for m in self.matched],
            "missing": self.missing,
            "extra": self.extra,
            "duplicates": self.duplicates,
            "annotation_mismatches": [vars(m) for m in self.annotation_mismatches],
        }


def restore_summands(printed: list, blocks: list) -> list:
    """Printed names plus the size-1 summands (A_1, osp(1|2), sl(1|1)) that the
    tables leave out, sorted."""
    return sorted(list(printed) + [cl.name for idx, cl in blocks if len(idx) == 1])


def computed_annotation(member: CartanPair, record_annotations: list, p: CartanPair) -> list:
    """Per-node names of p (in p's numbering) from annotations of the class
    member equal to canonical_form(p)."""
    order = canonical_order(normalize(p))
    return [record_annotations[order.index(i)] for i in range(p.n)]


def verify_fixture(result, fixture: list, c: Optional[Catalog] = None) -> VerifyReport:
    """Match computed classes to fixture entries of the same size by class
    membership and compare per-node annotations."""
    c = c or default_catalog(max(result.size, 2))
    entries = [e for e in fixture if e.size == result.size]
    classes = [r for r in result.classes if result.mode == "even" or r.super]
    report = VerifyReport(result.size, result.mode)
    where: dict = {}
    for k, rec in enumerate(classes):
        for m in rec.orbit.members:
            where.setdefault(m, set()).add(k)
    hits: Counter = Counter()
    for e in entries:
        found = set()
        for p in e.matrices:
            found |= where.get(canonical_form(p), set())
        if not found:
            report.missing.append(e.label)
            continue
        if len(found) > 1:
            report.duplicates.append(e.label)
        k = min(found)
        hits[k] += 1
        report.matched.append((e.label, k))
        rec = classes[k]
        members = {m: i for i, m in enumerate(rec.orbit.members)}
        for mi, (p, printed) in enumerate(zip(e.matrices, e.annotations)):
            cf = canonical_form(p)
            if cf not in members:
                report.annotation_mismatches.append(
                    AnnotationMismatch(e.label, mi, -1, ["<member of another class>"], []))
                continue
            computed = computed_annotation(cf, rec.annotations[members[cf]], p)
            for node in range(p.n):
                blocks = classify_blocks(principal_delete(p, node), c)
                want = restore_summands(printed[node], blocks)
                got = sorted(computed[node])
                if want != got:
                    report.annotation_mismatches.append(
                        AnnotationMismatch(e.label, mi, node + 1, want, got))
    report.extra = [k for k in range(len(classes)) if hits[k] == 0]
    report.duplicates += [f"class {k}" for k, v in hits.items() if v > 1]
    return report


def symmetrizable_mismatches(fixture: list) -> list:
    """Labels whose S/NS or H/NH prefix disagrees with the matrix."""
    return [e.label for e in fixture if is_symmetrizable(e.matrices[0]) != e.symmetrizable_prefix]

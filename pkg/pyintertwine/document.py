"""Line-oriented text format for matroids and verification reports.

A matroid document lists its ground labels and either its ranked cyclic flats or its bases::

    # comment
    name: U(2,4)
    ground: e0 e1 e2 e3
    kind: cyclic_flats
    flat: 0 |
    flat: 2 | e0 e1 e2 e3
    end

A report is an envelope of `key: value` lines opened by `report:` and closed by `end`."""

import os
import re

from pyintertwine.matroid import CyclicFlatPresentation, TableOracle, recompute_cyclic_flats, enumerate_bases
from pyintertwine.utils import get_logger, mask_of, check_exhaustive, canonical_order_key
from pyintertwine.verification import VerificationReport, MinorWitness

LOGGER = get_logger()

BASES_DOCUMENT_LIMIT = 16

_LABEL = re.compile(r'^[^\s#|:=]+$')


def _fields(text: str) -> list[tuple[int, str, str]]:
    """Non-empty lines without comments, as (line number, key, value)"""
    fields = []
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0].strip()
        if line == '':
            continue
        if line == 'end':
            fields.append((number, 'end', ''))
            continue
        key, colon, value = line.partition(':')
        if colon == '':
            raise ValueError(f'line {number}: expected "key: value", got {line!r}')
        fields.append((number, key.strip(), value.strip()))
    return fields


def _check_labels(labels: list[str], number: int) -> None:
    for label in labels:
        if not _LABEL.match(label):
            raise ValueError(f'line {number}: invalid label {label!r}')


def _indices(labels: list[str], index: dict[str, int], number: int) -> list[int]:
    unknown = [label for label in labels if label not in index]
    if len(unknown) > 0:
        raise ValueError(f'line {number}: labels {", ".join(unknown)} are not in the ground set')
    return [index[label] for label in labels]


def _build(block: list[tuple[int, str, str]], validate: bool = True) -> CyclicFlatPresentation:
    name, ground, kind = None, None, 'cyclic_flats'
    flats, bases = [], []
    for number, key, value in block:
        if key == 'name':
            name = value if value != '' else None
        elif key == 'ground':
            if ground is not None:
                raise ValueError(f'line {number}: ground set declared twice')
            ground = value.split()
            _check_labels(ground, number)
            if len(set(ground)) != len(ground):
                duplicates = sorted({label for label in ground if ground.count(label) > 1})
                raise ValueError(f'line {number}: duplicate labels {", ".join(duplicates)}')
        elif key == 'kind':
            if value not in ('cyclic_flats', 'bases'):
                raise ValueError(f'line {number}: unknown kind {value!r}, expected cyclic_flats or bases')
            kind = value
        elif key == 'flat':
            rank, bar, members = value.partition('|')
            if bar == '' or not rank.strip().isdigit():
                raise ValueError(f'line {number}: expected "flat: <rank> | labels", got {value!r}')
            flats.append((number, int(rank), members.split()))
        elif key == 'basis':
            bases.append((number, value.split()))
        else:
            raise ValueError(f'line {number}: unknown key {key!r}')
    if ground is None:
        raise ValueError(f'document {name or "without name"} has no ground line')
    index = {label: i for i, label in enumerate(ground)}

    if kind == 'cyclic_flats':
        if len(bases) > 0:
            raise ValueError(f'line {bases[0][0]}: basis line in a cyclic_flats document')
        pairs = [(mask_of(_indices(members, index, number)), rank) for number, rank, members in flats]
        return CyclicFlatPresentation(ground, pairs, name, validate=validate)

    if len(flats) > 0:
        raise ValueError(f'line {flats[0][0]}: flat line in a bases document')
    if len(ground) > BASES_DOCUMENT_LIMIT:
        raise ValueError(f'bases documents are limited to {BASES_DOCUMENT_LIMIT} elements, got {len(ground)}')
    check_exhaustive(len(ground), 'bases document')
    masks = [mask_of(_indices(members, index, number)) for number, members in bases]
    if len(masks) == 0:
        raise ValueError('a bases document needs at least one basis')
    if len({m.bit_count() for m in masks}) != 1:
        raise ValueError('bases of a matroid all have the same size')
    matroid = recompute_cyclic_flats(TableOracle.from_bases(ground, masks), strict=True, name=name)
    if {b.mask for b in enumerate_bases(matroid)} != set(masks):
        raise ValueError(f'the bases of {name or "the document"} do not satisfy the basis exchange axiom')
    return matroid


def parse_documents(text: str, validate: bool = True) -> list[CyclicFlatPresentation]:
    """Parse all the documents of a text.

    :param text: the documents, each closed by an `end` line
    :type text: str
    :param validate: check the axioms of cyclic_flats documents. Default: True
    :type validate: bool

    :return: the presentations, in order
    :rtype: list[CyclicFlatPresentation]"""
    documents, block = [], []
    for number, key, value in _fields(text):
        if key == 'end':
            documents.append(_build(block, validate))
            block = []
        else:
            block.append((number, key, value))
    if len(block) > 0:
        raise ValueError(f'line {block[-1][0]}: document is not closed by "end"')
    return documents


def parse_document(text: str, validate: bool = True) -> CyclicFlatPresentation:
    """Parse a text holding exactly one document.

    :param text: the document
    :type text: str
    :param validate: check the axioms of a cyclic_flats document. Default: True
    :type validate: bool

    :return: the presentation
    :rtype: CyclicFlatPresentation"""
    documents = parse_documents(text, validate)
    if len(documents) != 1:
        raise ValueError(f'expected one document, found {len(documents)}')
    return documents[0]


def serialize(matroid: CyclicFlatPresentation) -> str:
    """Canonical cyclic_flats document of a presentation, flats in canonical order"""
    lines = []
    if matroid.name:
        lines.append(f'name: {matroid.name}')
    lines.append(f'ground: {" ".join(matroid.labels)}')
    lines.append('kind: cyclic_flats')
    for mask, rank in sorted(matroid.pairs, key=lambda pair: canonical_order_key(pair[0])):
        members = ' '.join(matroid.labels_of(mask))
        lines.append(f'flat: {rank} | {members}'.rstrip())
    lines.append('end')
    return '\n'.join(lines) + '\n'


def read_document(filepath: str, validate: bool = True) -> CyclicFlatPresentation:
    """Read a file holding one document"""
    if not os.path.exists(filepath):
        raise ValueError(f'document file {filepath} does not exist')
    with open(filepath) as f:
        return parse_document(f.read(), validate)


def write_document(matroid: CyclicFlatPresentation, filepath: str) -> None:
    """Write the canonical document of a presentation"""
    with open(filepath, 'w') as f:
        f.write(serialize(matroid))
    LOGGER.debug(f'document written to {filepath}')


########################################################################################################################
# Reports
########################################################################################################################

def serialize_report(report: VerificationReport) -> str:
    """Report envelope of a verification report"""
    lines = [f'report: {report.check}', f'verdict: {str(report.verdict).lower()}']
    for target, witness in report.witnesses.items():
        lines.append(f'witness.{target}.deleted: {" ".join(witness.deleted)}'.rstrip())
        lines.append(f'witness.{target}.contracted: {" ".join(witness.contracted)}'.rstrip())
        lines.append(f'witness.{target}.map: {" ".join(f"{a}={b}" for a, b in witness.mapping.items())}'.rstrip())
    lines += [f'detail.{key}: {value}' for key, value in report.details.items()]
    lines += [f'counter.{key}: {value}' for key, value in report.counters.items()]
    lines += [f'note: {note}' for note in report.notes]
    lines.append(f'elapsed: {report.elapsed:.3f}')
    lines.append('end')
    return '\n'.join(lines) + '\n'


def parse_report(text: str) -> VerificationReport:
    """Parse the first report envelope of a text, ignoring the matroid documents around it.

    :param text: text holding a report
    :type text: str

    :return: the report
    :rtype: VerificationReport"""
    report, witnesses = None, {}
    for number, key, value in _fields(text):
        if report is None:
            if key == 'report':
                report = VerificationReport(value, False)
            continue
        if key == 'end':
            break
        if key == 'verdict':
            if value not in ('true', 'false'):
                raise ValueError(f'line {number}: verdict must be true or false, got {value!r}')
            report.verdict = value == 'true'
        elif key.startswith('witness.'):
            parts = key.split('.')
            if len(parts) != 3 or parts[2] not in ('deleted', 'contracted', 'map'):
                raise ValueError(f'line {number}: malformed witness key {key!r}')
            witnesses.setdefault(parts[1], {})[parts[2]] = value.split()
        elif key.startswith('detail.'):
            report.details[key[len('detail.'):]] = value
        elif key.startswith('counter.'):
            report.counters[key[len('counter.'):]] = int(value)
        elif key == 'note':
            report.notes.append(value)
        elif key == 'elapsed':
            report.elapsed = float(value)
        else:
            raise ValueError(f'line {number}: unknown report key {key!r}')
    if report is None:
        raise ValueError('no report envelope found')
    for target, parts in witnesses.items():
        mapping = dict(pair.split('=', 1) for pair in parts.get('map', []))
        report.witnesses[target] = MinorWitness(tuple(parts.get('deleted', [])), tuple(parts.get('contracted', [])),
                                                mapping)
    return report

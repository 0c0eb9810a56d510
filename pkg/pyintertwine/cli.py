"""Command line interface. Matroid inputs are document files, `-` for standard input, or fixture identifiers such as
`uniform(2,4)`. Documents and reports go to standard output, diagnostics to standard error. Exit codes: 0 when the
verdict is true or the command succeeded, 1 when the verdict is false, 2 on usage or input errors."""

import os
import sys
from collections.abc import Sequence
from contextlib import contextmanager
from enum import Enum, unique

import typer

try:  # recent typer vendors its own click; catch the exceptions it actually raises
    from typer import _click as click
except ImportError:
    import click
from rich.console import Console

from pyintertwine.connectivity import connectivity
from pyintertwine.constructions import (dual, direct_sum, free_extension, free_coextension, truncate, lift, minor,
                                        relabel)
from pyintertwine.document import parse_document, read_document, serialize, serialize_report, parse_report
from pyintertwine.fixtures import catalog as fixture_catalog, fixture
from pyintertwine.intertwine import Mode, derive_params, construct_intertwine, pairing_family, construct_ch_variant
from pyintertwine.isomorphism import is_isomorphic
from pyintertwine.matroid import (CyclicFlatPresentation, validate_presentation, circuit_hyperplanes, fi_set,
                                  fi_dual_set)
from pyintertwine.summary import matroid_summary
from pyintertwine.transversal import is_transversal_mi, is_cotransversal
from pyintertwine.utils import get_logger, set_logger
from pyintertwine.verification import VerificationReport, verify_intertwine, obtainability_closure, is_obtainable

LOGGER = get_logger()

app = typer.Typer(no_args_is_help=True, add_completion=False,
                  help='Cyclic-flat matroid toolkit: intertwine constructions and their verification.')
console = Console(stderr=True)


@unique
class CheckKind(str, Enum):
    """Single-matroid checks of the `check` command"""
    AXIOMS = 'axioms'
    TRANSVERSAL = 'transversal'
    COTRANSVERSAL = 'cotransversal'
    CONNECTIVITY = 'connectivity'
    CIRCUIT_HYPERPLANES = 'circuit-hyperplanes'
    FI_SETS = 'fi-sets'


@unique
class Operation(str, Enum):
    """Constructions of the `op` command"""
    DUAL = 'dual'
    SUM = 'sum'
    EXTEND = 'extend'
    COEXTEND = 'coextend'
    TRUNCATE = 'truncate'
    LIFT = 'lift'
    MINOR = 'minor'


def _labels(text: str | None) -> list[str]:
    """Labels separated by commas or spaces"""
    if text is None:
        return []
    return text.replace(',', ' ').split()


def _load(source: str, validate: bool = True) -> CyclicFlatPresentation:
    """Read a matroid from a document file, standard input or a fixture identifier"""
    if source == '-':
        return parse_document(sys.stdin.read(), validate)
    if os.path.exists(source):
        return read_document(source, validate)
    try:
        return fixture(source)
    except ValueError as error:
        raise ValueError(f'{source} is neither a document file nor a fixture identifier ({error})') from None


@contextmanager
def _input_errors():
    """Turn input errors into exit code 2 with a diagnostic"""
    try:
        yield
    except ValueError as error:
        console.print(f'error: {error}', markup=False, highlight=False)
        raise typer.Exit(code=2)


def _emit(text: str, output: str | None = None) -> None:
    if output is None:
        typer.echo(text, nl=False)
    else:
        with open(output, 'w') as f:
            f.write(text)


def _emit_report(report: VerificationReport, output: str | None = None) -> None:
    _emit(serialize_report(report), output)
    if not report.verdict:
        raise typer.Exit(code=1)


@app.callback()
def configure(log_level: str = typer.Option('WARNING', '--log-level', help='Logging level of the package.')):
    """Cyclic-flat matroid toolkit."""
    set_logger(log_level.upper())


@app.command('construct', help='Build the intertwine construction of two matroids.')
def construct_command(
        first: str = typer.Argument(..., help='M1: document file, - or fixture identifier.'),
        second: str = typer.Argument(..., help='M2: document file, - or fixture identifier.'),
        k: int = typer.Option(..., '--k', help='Rank of the construction.'),
        s1p: str = typer.Option('', '--s1p', help='Labels of S1\', comma separated.'),
        s2p: str = typer.Option('', '--s2p', help='Labels of S2\', comma separated.'),
        mode: Mode = typer.Option(Mode.LABELLED, '--mode', help='Intertwine target checked by the hypotheses.'),
        ch: int = typer.Option(0, '--ch', help='Number of circuit-hyperplanes installed by the pairing scheme.'),
        prefix1: str | None = typer.Option(None, '--prefix1', help='Prefix added to the labels of M1.'),
        prefix2: str | None = typer.Option(None, '--prefix2', help='Prefix added to the labels of M2.'),
        output: str | None = typer.Option(None, '--output', '-o', help='Write the document to this file.')):
    with _input_errors():
        m1, m2 = _load(first), _load(second)
        s1p_labels, s2p_labels = _labels(s1p), _labels(s2p)
        if prefix1 is not None:
            m1 = relabel(m1, prefix=prefix1)
            s1p_labels = [f'{prefix1}{label}' for label in s1p_labels]
        if prefix2 is not None:
            m2 = relabel(m2, prefix=prefix2)
            s2p_labels = [f'{prefix2}{label}' for label in s2p_labels]
        params = derive_params(m1, s1p_labels, m2, s2p_labels, k, mode)
        matroid = construct_intertwine(params)
        if ch > 0:
            matroid = construct_ch_variant(matroid, params, pairing_family(params, ch))
    failing = [name for name, holds in params.hypotheses.items() if not holds]
    if len(failing) > 0:
        console.print(f'hypotheses not satisfied: {", ".join(failing)}', highlight=False)
    _emit(serialize(matroid), output)


def _replay(matroid: CyclicFlatPresentation, m1: CyclicFlatPresentation, m2: CyclicFlatPresentation,
            report_path: str) -> VerificationReport:
    if not os.path.exists(report_path):
        raise ValueError(f'report file {report_path} does not exist')
    with open(report_path) as f:
        original = parse_report(f.read())
    if len(original.witnesses) == 0:
        raise ValueError(f'report {report_path} has no witness to replay')
    replayed = VerificationReport('replay', True)
    for target, witness in original.witnesses.items():
        ok = witness.replay(matroid, m1 if target.endswith('m1') else m2)
        replayed.details[target] = 'ok' if ok else 'failed'
        replayed.verdict &= ok
    return replayed


@app.command('verify', help='Check that a matroid is an intertwine of two matroids.')
def verify_command(
        matroid_source: str = typer.Argument(..., help='Candidate intertwine.'),
        first: str = typer.Argument(..., help='M1.'),
        second: str = typer.Argument(..., help='M2.'),
        labelled: bool = typer.Option(False, '--labelled', help='Labelled intertwine check.'),
        prune: bool = typer.Option(True, '--prune/--no-prune', help='Use the pruning rules of the minor search.'),
        jobs: int = typer.Option(1, '--jobs', help='Number of parallel jobs.'),
        replay: str | None = typer.Option(None, '--replay', help='Re-check the witnesses of an emitted report.'),
        output: str | None = typer.Option(None, '--output', '-o', help='Write the report to this file.')):
    with _input_errors():
        matroid, m1, m2 = _load(matroid_source), _load(first), _load(second)
        if replay is not None:
            report = _replay(matroid, m1, m2, replay)
        else:
            report = verify_intertwine(matroid, m1, m2, labelled=labelled, prune=prune, n_jobs=jobs)
    _emit_report(report, output)


@app.command('check', help='Run a single-matroid check.')
def check_command(kind: CheckKind = typer.Argument(..., help='Check to run.'),
                  source: str = typer.Argument(..., help='The matroid.')):
    with _input_errors():
        matroid = _load(source, validate=kind != CheckKind.AXIOMS)
        report = VerificationReport(kind.value, True)
        if kind == CheckKind.AXIOMS:
            verdict = validate_presentation(matroid.pairs, matroid.ground_size)
            report.verdict = verdict.valid
            report.details['message'] = str(verdict)
            if not verdict.valid:
                report.details['axiom'] = verdict.axiom
                report.details['flats'] = ' '.join(matroid.format_flat(f.mask) for f in verdict.flats)
        elif kind in (CheckKind.TRANSVERSAL, CheckKind.COTRANSVERSAL):
            verdict = is_transversal_mi(matroid) if kind == CheckKind.TRANSVERSAL else is_cotransversal(matroid)
            report.verdict = verdict.transversal
            report.counters['antichains'] = verdict.checked
            if not verdict.transversal:
                report.details['antichain'] = ' '.join(matroid.format_flat(f.mask) for f in verdict.antichain)
                report.details['deficit'] = str(verdict.deficit)
        elif kind == CheckKind.CONNECTIVITY:
            result = connectivity(matroid)
            report.details['lambda'] = 'none' if result.tutte is None else str(result.tutte)
            report.details['kappa'] = str(result.vertical)
            report.details['rounded'] = str(result.rounded).lower()
        elif kind == CheckKind.CIRCUIT_HYPERPLANES:
            found = circuit_hyperplanes(matroid)
            report.counters['circuit_hyperplanes'] = len(found)
            report.details['sets'] = ' '.join(matroid.format_flat(h.mask) for h in found)
        else:
            report.details['fi'] = matroid.format_flat(fi_set(matroid).mask)
            report.details['fi_dual'] = matroid.format_flat(fi_dual_set(matroid).mask)
    _emit_report(report)


@app.command('op', help='Apply a construction and print the resulting document.')
def op_command(operation: Operation = typer.Argument(..., help='Construction to apply.'),
               source: str = typer.Argument(..., help='The matroid.'),
               other: str | None = typer.Argument(None, help='Second matroid, for sum.'),
               i: int = typer.Option(1, '--i', help='Order of the truncation or lift.'),
               labels: str = typer.Option('', '--labels', help='New labels, for extend and coextend.'),
               delete: str = typer.Option('', '--delete', help='Deleted labels, for minor.'),
               contract: str = typer.Option('', '--contract', help='Contracted labels, for minor.'),
               output: str | None = typer.Option(None, '--output', '-o', help='Write the document to this file.')):
    if operation == Operation.SUM and other is None:
        raise typer.BadParameter('sum needs a second matroid')
    with _input_errors():
        matroid = _load(source)
        if operation == Operation.DUAL:
            result = dual(matroid)
        elif operation == Operation.SUM:
            result = direct_sum(matroid, _load(other))
        elif operation == Operation.EXTEND:
            result = free_extension(matroid, _labels(labels))
        elif operation == Operation.COEXTEND:
            result = free_coextension(matroid, _labels(labels))
        elif operation == Operation.TRUNCATE:
            result = truncate(matroid, i)
        elif operation == Operation.LIFT:
            result = lift(matroid, i)
        else:
            result = minor(matroid, delete=_labels(delete), contract=_labels(contract))
    _emit(serialize(result.with_name(matroid.name if operation == Operation.DUAL else None)), output)


@app.command('iso', help='Test whether two matroids are isomorphic.')
def iso_command(first: str = typer.Argument(..., help='First matroid.'),
                second: str = typer.Argument(..., help='Second matroid.')):
    with _input_errors():
        mapping = is_isomorphic(_load(first), _load(second))
    report = VerificationReport('isomorphism', mapping is not None)
    if mapping is not None:
        report.details['map'] = ' '.join(f'{a}={b}' for a, b in mapping.items())
    _emit_report(report)


@app.command('catalog', help='Print the documents of the catalog fixtures.')
def catalog_command(identifier: str | None = typer.Option(None, '--id', help='Print a single fixture.')):
    with _input_errors():
        matroids = [fixture(identifier)] if identifier is not None else list(fixture_catalog().values())
    for matroid in matroids:
        _emit(serialize(matroid))


@app.command('closure', help='Isomorphism classes reachable by single-element operations under a size cap.')
def closure_command(source: str = typer.Argument(..., help='Seed matroid.'),
                    cap: int = typer.Option(..., '--cap', help='Maximum number of elements, at most 12.'),
                    target: str | None = typer.Option(None, '--target', help='Stop when this matroid is reached.'),
                    show: bool = typer.Option(False, '--show', help='Also print the reached classes.')):
    with _input_errors():
        seed = _load(source)
        if target is not None:
            report = VerificationReport('obtainable', is_obtainable(seed, _load(target), cap))
            report.details['cap'] = str(cap)
            report.notes.append('classes needing a larger intermediate matroid are not explored')
            _emit_report(report)
            return
        classes = obtainability_closure(seed, cap)
    report = VerificationReport('closure', True)
    report.details['cap'] = str(cap)
    report.counters['classes'] = len(classes)
    _emit_report(report)
    if show:
        for matroid in classes.values():
            _emit(serialize(matroid))


@app.command('summary', help='Print a human readable summary of a matroid.')
def summary_command(source: str = typer.Argument(..., help='The matroid.')):
    with _input_errors():
        matroid_summary(_load(source))


def run_command(argv: Sequence[str]) -> int:
    """Run the command line interface on the given arguments and return the exit code.

    :param argv: the arguments, without the program name
    :type argv: Sequence[str]

    :return: 0 on success or true verdict, 1 on false verdict, 2 on usage or input error
    :rtype: int"""
    try:
        result = app(args=list(argv), prog_name='pyintertwine', standalone_mode=False)
    except click.ClickException as error:
        console.print(f'usage error: {error.format_message()}', markup=False, highlight=False)
        return 2
    except click.exceptions.Abort:
        console.print('aborted')
        return 2
    return result if isinstance(result, int) else 0


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))

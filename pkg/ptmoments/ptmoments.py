#!/usr/bin/env python
#
#  ptmoments/ptmoments.py
#  PartialTransposeMoments
#
import logging

import os
import sys
import time
import argparse
from fractions import Fraction
from dataclasses import dataclass, field

from . import __version__
from .utils import PtmUsageError, InfeasibleSizeError
from .moments import SubspaceSpec, exact_moment_dims, binning, MAX_MOMENT_DEGREE
from .weingarten import wg_table, wg_cycle_formula
from .bounds import (thm_main_bounds,
                     select_order,
                     lp_argmax,
                     lp_dual_bound,
                     explicit_moment_bound)
from .operators import (RngStream,
                        antisym_projector,
                        antisym_square_witness,
                        partial_transpose,
                        operator_norm,
                        random_projector,
                        seesaw_hsep)
from .experiments import (Experiment,
                          mc_moment,
                          mc_norm,
                          mc_product_state,
                          wishart_pt_experiment,
                          certificate)
from .verify import verify_suites, SUITES
from .output import run_record, write_json, write_csv, table_rows

COMMANDS = ('wg', 'moment-exact', 'moment-mc', 'norm', 'bound', 'verify',
            'antisym', 'wishart', 'certificate', 'product')

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_INFEASIBLE = 0, 1, 2, 3

ANTISYM_TOL = 1e-9
SEESAW_ANTISYM_TOL = 1e-6

class colors:
    RED = '\033[91m'
    YELLOW = '\033[93m'
    GREEN = '\033[92m'
    BLUE = '\033[94m'
    PINK = '\033[95m'
    CYAN = '\033[96m'
    ENDC = '\033[0m'
    BOLD = '\033[1m'

class ColorFormatter(logging.Formatter):
    def __init__(self, msg, use_color = True):
        logging.Formatter.__init__(self, msg)
        self.use_color = use_color
        self.COLORS = {
            'DEBUG': colors.CYAN,
            'INFO': colors.BLUE,
            'WARNING': colors.YELLOW,
            'ERROR': colors.RED,
            'CRITICAL': colors.PINK,
        }
        self.RESET = colors.ENDC

    def format(self, record):
        levelname = record.levelname
        if self.use_color and levelname in self.COLORS:
            record.levelname = self.COLORS[levelname] + levelname + self.RESET
        return logging.Formatter.format(self, record)

def add_ptmoments_args(parser):
    system  = parser.add_argument_group('Subspace and moment parameters')
    sampler = parser.add_argument_group('Monte-Carlo parameters')
    checks  = parser.add_argument_group('Verification parameters')
    output  = parser.add_argument_group('Output format')

    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    parser.add_argument('-v', '--verbose', action='count', default=0,
        help="Print logging output. (-vv increases verbosity.)")
    parser.add_argument('--logfile', default='', action='store', metavar='<str>',
        help="Redirect logging information to a file.")
    parser.add_argument('command', choices=COMMANDS,
        help="The computation to run.")

    system.add_argument('--da', type=int, default=2, metavar='<int>',
        help="Dimension d_A of the first factor.")
    system.add_argument('--db', type=int, default=2, metavar='<int>',
        help="Dimension d_B of the second factor.")
    system.add_argument('--r', type=int, default=1, metavar='<int>',
        help="Dimension r of the random subspace.")
    system.add_argument('--k', type=int, default=None, metavar='<int>',
        help="""Moment order / degree of the symmetric group. (Required by wg
        and moment commands; optional for bound.)""")
    system.add_argument('--d', type=int, default=None, metavar='<int>',
        help="Local dimension for wg, antisym and wishart.")
    system.add_argument('--alpha-num', type=int, default=1, metavar='<int>',
        help="Numerator of the Wishart aspect ratio.")
    system.add_argument('--alpha-den', type=int, default=4, metavar='<int>',
        help="Denominator of the Wishart aspect ratio.")
    system.add_argument('--no-cache', action='store_true',
        help="Do not read or write the S_k binning cache.")

    sampler.add_argument('--samples', type=int, default=1000, metavar='<int>',
        help="Number of Monte-Carlo samples.")
    sampler.add_argument('--seed', type=int, default=0, metavar='<int>',
        help="Base seed; sample i uses the stream (seed, i).")
    sampler.add_argument('--threads', type=int, default=os.cpu_count() or 1, metavar='<int>',
        help="Worker threads for sampling (results do not depend on it).")
    sampler.add_argument('--restarts', type=int, default=16, metavar='<int>',
        help="Random restarts of the product-state seesaw.")
    sampler.add_argument('--allow-vacuous', action='store_true',
        help="Run the certificate even when its exponent is vacuous.")

    checks.add_argument('--suite', action='append', default=None,
        choices=('all',) + SUITES,
        help="Verification suite (repeatable). Defaults to all.")
    checks.add_argument('--kmax', type=int, default=5, metavar='<int>',
        help="Largest degree for verification suites.")

    output.add_argument('--format', default='json', choices=('json', 'csv'),
        help="Report format.")
    output.add_argument('--out', default=None, metavar='<str>',
        help="Write the report to a file instead of STDOUT.")
    output.add_argument('--per-sample', action='store_true',
        help="Keep every sample (CSV: one row per sample).")
    return

def set_handle_verbosity(h, v):
    if v == 0:
        h.setLevel(logging.WARNING)
    elif v == 1:
        h.setLevel(logging.INFO)
    elif v == 2:
        h.setLevel(logging.DEBUG)
    elif v >= 3:
        h.setLevel(logging.NOTSET)

@dataclass
class RunConfig:
    command: str
    parameters: dict
    seed: int = 0
    threads: int = 1
    format: str = 'json'
    out: str = None
    per_sample: bool = False
    cache: bool = True

@dataclass
class RunReport:
    config: RunConfig
    results: dict
    rows: list
    passed: bool
    runtime_ms: int = 0
    record: dict = field(default = None, repr = False)

def _require(params, *names):
    missing = [n for n in names if params.get(n) is None]
    if missing:
        raise PtmUsageError(f'Missing parameter(s): {", ".join("--" + n for n in missing)}.')

def _spec(params):
    return SubspaceSpec(params['da'], params['db'], params['r'])

def _estimator_rows(rep, per_sample):
    if per_sample and rep.samples is not None:
        return [{'sample': i, 'value': v} for i, v in enumerate(rep.samples)]
    return [dict(rep.summary(), **rep.extra)]

def _cmd_wg(cfg, exp):
    p = cfg.parameters
    _require(p, 'k', 'd')
    table = wg_table(p['k'], p['d'])
    results = {'table': table, 'cycle_formula': wg_cycle_formula(p['k'], p['d'])}
    return results, table_rows(table, 'cycle_type', 'wg'), True

def _cmd_moment_exact(cfg, exp):
    p = cfg.parameters
    _require(p, 'k')
    binning(p['k'], cache = cfg.cache)
    value = exact_moment_dims(p['da'], p['db'], p['r'], p['k'])
    results = {'moment': value, 'moment_float': float(value)}
    return results, [results], True

def _cmd_moment_mc(cfg, exp):
    p = cfg.parameters
    _require(p, 'k')
    rep = mc_moment(_spec(p), p['k'], p['samples'], experiment = exp)
    return rep, _estimator_rows(rep, cfg.per_sample), True

def _cmd_norm(cfg, exp):
    p = cfg.parameters
    rep = mc_norm(_spec(p), p['samples'], experiment = exp)
    return rep, _estimator_rows(rep, cfg.per_sample), True

def _cmd_bound(cfg, exp):
    p = cfg.parameters
    spec = _spec(p)
    k_sel = select_order(spec.m) or 2
    if k_sel <= MAX_MOMENT_DEGREE:
        binning(k_sel, cache = cfg.cache)
    rep = thm_main_bounds(spec)
    passed = rep.lp_brute <= rep.lp_dual
    if rep.exact_moment is not None and rep.explicit_bound is not None:
        passed = passed and rep.exact_moment <= rep.explicit_bound
    results = {'report': rep}
    if p.get('k') is not None:
        k = p['k']
        value, triple = lp_argmax(spec, k)
        at_k = {'k': k, 'lp_brute': value, 'lp_triple': triple,
                'lp_dual': lp_dual_bound(spec, k)}
        passed = passed and value <= at_k['lp_dual']
        if 4 * k ** 3 <= spec.r ** 2 and spec.d >= k:
            at_k['explicit_bound'] = explicit_moment_bound(spec, k)
            if k <= MAX_MOMENT_DEGREE:
                at_k['exact_moment'] = exact_moment_dims(spec.d_A, spec.d_B, spec.r, k)
                passed = passed and at_k['exact_moment'] <= at_k['explicit_bound']
        results['at_k'] = at_k
    row = {'k': rep.k, 'branch': rep.branch, 'scale': rep.scale,
           'lp_brute': rep.lp_brute, 'lp_dual': rep.lp_dual,
           'exact_moment': rep.exact_moment, 'explicit_bound': rep.explicit_bound,
           'moment_root': rep.moment_root,
           'entropy_leading': rep.entropy.leading, 'entropy_floor': rep.entropy.floor}
    if rep.weak_mult is not None:
        row['exponent'] = rep.weak_mult.exponent
        row['vacuous'] = rep.weak_mult.vacuous
    return results, [row], passed

def _cmd_verify(cfg, exp):
    p = cfg.parameters
    reports = verify_suites(p['kmax'], p.get('suite'))
    rows = [{'suite': name, 'passed': r.passed, 'checks': r.checks,
             'counterexample': r.counterexample} for name, r in reports.items()]
    return reports, rows, all(r.passed for r in reports.values())

def _cmd_antisym(cfg, exp):
    p = cfg.parameters
    _require(p, 'd')
    d = p['d']
    P = antisym_projector(d)
    norm = operator_norm(partial_transpose(P))
    expected = (d - 1) / 2
    hsep = seesaw_hsep(P, restarts = exp.restarts, tol = exp.tol,
                       rng = RngStream(exp.seed), max_iter = exp.max_iter)
    results = {'rank': int(round(P.trace())), 'pt_norm': norm, 'pt_norm_expected': expected,
               'seesaw': hsep, 'two_copy_witness': antisym_square_witness(d),
               'two_copy_expected': (1 - 1 / d) / 2}
    passed = abs(norm - expected) <= ANTISYM_TOL and abs(hsep - 0.5) <= SEESAW_ANTISYM_TOL
    return results, [results], passed

def _cmd_wishart(cfg, exp):
    p = cfg.parameters
    _require(p, 'd')
    if p['alpha_den'] <= 0:
        raise PtmUsageError('--alpha-den must be positive.')
    alpha = Fraction(p['alpha_num'], p['alpha_den'])
    rep = wishart_pt_experiment(p['d'], alpha, p['samples'], experiment = exp)
    return rep, _estimator_rows(rep, cfg.per_sample), True

def _cmd_certificate(cfg, exp):
    p = cfg.parameters
    rep = certificate(_spec(p), p['samples'], experiment = exp,
                      allow_vacuous = bool(p.get('allow_vacuous')))
    results = {'report': rep, 'failure_fraction': rep.failure_fraction}
    if cfg.per_sample:
        rows = [{'sample': i, 'norm': x, 'passed': ok}
                for i, (x, ok) in enumerate(zip(rep.norms, rep.passed))]
    else:
        rows = [{'threshold': rep.threshold, 'exponent': rep.exponent, 'vacuous': rep.vacuous,
                 'failure_fraction': rep.failure_fraction}]
    return results, rows, rep.failure_fraction == 0

def _cmd_product(cfg, exp):
    p = cfg.parameters
    spec = _spec(p)
    rep = mc_product_state(spec, p['samples'], experiment = exp)
    m = random_projector(spec, RngStream(exp.seed)).operator
    hsep = seesaw_hsep(m, restarts = exp.restarts, tol = exp.tol,
                       rng = RngStream(exp.seed, p['samples'] + 1), max_iter = exp.max_iter)
    rep.extra['seesaw'] = hsep
    rep.extra['seesaw_floor'] = max(spec.r / spec.d, 1 / spec.d_A)
    return rep, _estimator_rows(rep, cfg.per_sample), True

_COMMANDS = {'wg': _cmd_wg,
             'moment-exact': _cmd_moment_exact,
             'moment-mc': _cmd_moment_mc,
             'norm': _cmd_norm,
             'bound': _cmd_bound,
             'verify': _cmd_verify,
             'antisym': _cmd_antisym,
             'wishart': _cmd_wishart,
             'certificate': _cmd_certificate,
             'product': _cmd_product}

def run(config):
    """ Dispatch a RunConfig and assemble its RunReport.

    Raises:
        PtmUsageError: invalid parameters.
        InfeasibleSizeError: a size cap was exceeded.
    """
    if config.command not in _COMMANDS:
        raise PtmUsageError(f'Unknown command: {config.command}.')
    exp = Experiment(config.seed, config.threads, config.per_sample)
    if config.parameters.get('restarts') is not None:
        exp.restarts = config.parameters['restarts']
    start = time.perf_counter()
    results, rows, passed = _COMMANDS[config.command](config, exp)
    runtime_ms = int(round(1000 * (time.perf_counter() - start)))
    report = RunReport(config, results, rows, passed, runtime_ms)
    report.record = run_record(config.command, config.parameters, config.seed,
                               results, runtime_ms)
    return report

def write_report(report, fh):
    cfg = report.config
    if cfg.format == 'csv':
        write_csv(report.rows, cfg.parameters, fh)
    else:
        write_json(report.record, fh)

PARAMETERS = ('da', 'db', 'r', 'k', 'd', 'alpha_num', 'alpha_den',
              'samples', 'restarts', 'allow_vacuous', 'suite', 'kmax')

def config_from_args(args):
    params = {name: getattr(args, name) for name in PARAMETERS}
    return RunConfig(args.command, params, args.seed, args.threads, args.format,
                     args.out, args.per_sample, not args.no_cache)

def main(argv = None):
    parser = argparse.ArgumentParser(
            formatter_class=argparse.ArgumentDefaultsHelpFormatter,
            description="""ptmoments: exact and sampled moments of partially
            transposed random subspace projectors.""")
    add_ptmoments_args(parser)
    args = parser.parse_args(argv)

    # ~~~~~~~~~~~~~
    # Logging Setup
    # ~~~~~~~~~~~~~
    title = "ptmoments: Partial Transpose Moments"
    logger = logging.getLogger('ptmoments')
    logger.setLevel(logging.DEBUG)

    if args.logfile:
        banner = "{} {}".format(title, __version__)
        fh = logging.FileHandler(args.logfile)
        formatter = logging.Formatter('%(levelname)s - %(message)s')
        set_handle_verbosity(fh, args.verbose)
        fh.setFormatter(formatter)
        logger.addHandler(fh)
    else:
        banner = "{} {}".format(colors.BOLD + title + colors.ENDC,
                                colors.GREEN + __version__ + colors.ENDC)
        ch = logging.StreamHandler()
        formatter = ColorFormatter('%(levelname)s %(message)s', use_color = True)
        set_handle_verbosity(ch, args.verbose)
        ch.setFormatter(formatter)
        logger.addHandler(ch)

    logger.info(banner)

    config = config_from_args(args)
    logger.info("")
    logger.info(f"Command: {config.command}")
    for name, value in config.parameters.items():
        if value is not None:
            logger.info(f"  - {name} = {value}")
    logger.info(f"Seed = {config.seed}, threads = {config.threads}")
    logger.info(f"Binning cache = {config.cache}")

    try:
        report = run(config)
    except InfeasibleSizeError as err:
        logger.error(f'Infeasible size: {err}')
        return EXIT_INFEASIBLE
    except PtmUsageError as err:
        logger.error(f'Usage error: {err}')
        return EXIT_USAGE

    if config.out:
        with open(config.out, 'w') as fh:
            write_report(report, fh)
    else:
        write_report(report, sys.stdout)

    if not report.passed:
        logger.warning('Some checks failed.')
        return EXIT_FAIL
    logger.info(f'Done in {report.runtime_ms} ms.')
    return EXIT_PASS

if __name__ == '__main__':
    sys.exit(main())


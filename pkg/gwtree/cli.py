# @package      gwtree
# @file         cli.py
# @copyright    Copyright (c) 2026 The gwtree developers.
# @license      http://opensource.org/licenses/MIT MIT
#
"""gwtree command line.

    gwtree survival --config run.yaml
    gwtree sample --config run.yaml --seed 7 --param mode=survive
    gwtree check --param system=height-band
    gwtree cost --param K=10 --out cost.csv
    gwtree simulate --seed 1 --reps 100000 --records reps.csv
    gwtree curve --out fig
    gwtree optimize --param k=10 --param K=10
    gwtree infinite --param mu=2

Data go to stdout or --out; diagnostics go to stderr as a single line
"gwtree: error: <category>: <message>". Exit codes: 0 success, 2 bad
configuration, 3 numerical or conditioning error, 4 failed check.
"""

import sys
import argparse
import logging

import numpy as np

from .run import RunConfig
from .utils import parse_assignment
from .encode import JsonEncoder, CsvEncoder
from .experiment import Experiment, get_experiment
from .tree import sample_unconditioned, dump_trees
from .survival import build_survival_table, sample_q, sample_r, equivalence_report
from .multitype import build_type_table, sample_type, type_equivalence_report
from .search import build_cost_table, simulate_costs, summarize_costs
from .poisson import optimize_mu, cost_curve, optimum_table
from .poisson import infinite_cost, infinite_mu_opt, mu_opt_limit
from .exceptions import GWTreeException, ConfigError, CheckFailedError

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_CHECK = 4

jsonEncoder = JsonEncoder()


def _json(document):
    return jsonEncoder.encode(document) + '\n'


def _emit(text, out):
    if not out:
        sys.stdout.write(text)
        return
    try:
        with open(out, 'w', newline='\n') as fp:
            fp.write(text)
    except OSError as e:
        raise ConfigError("cannot write %s: %s" % (out, e.strerror or e))


def cmd_survival(config, args):
    table = build_survival_table(config.schedule(), config.k)
    _emit(CsvEncoder(['l', 'p']).encode(table.rows()), config.out)


def cmd_sample(config, args):
    rng = np.random.default_rng(config.require_seed('sample'))
    sched = config.schedule()
    k = config.k
    l = config.level
    typeIndex = config.type_index()
    if typeIndex is not None:
        table = build_type_table(config.type_system('sample'), sched, k)
        trees = [sample_type(table, l, typeIndex, rng) for _ in range(config.count)]
    elif config.mode == 'unconditioned':
        trees = [sample_unconditioned(sched, l, k, rng) for _ in range(config.count)]
    else:
        table = build_survival_table(sched, k)
        sampler = sample_q if config.mode == 'survive' else sample_r
        trees = [sampler(table, l, rng) for _ in range(config.count)]
    _emit(dump_trees(trees), config.out)


def _check_record(name, report):
    return {'check': name, 'tv': report.tv, 'max_deviation': report.max_deviation, 'atoms': report.atoms}


def cmd_check(config, args):
    sched = config.schedule()
    table = build_survival_table(sched, config.k)
    if config.perturb:
        table = table.perturbed(config.perturb)
    records = [_check_record('survival', equivalence_report(table, config.max_children))]
    if config.system is not None:
        typeTable = build_type_table(config.type_system('check'), sched, config.k)
        records.append(_check_record(config.system, type_equivalence_report(typeTable, config.max_children)))
    passed = all(record['tv'] <= config.check_tol for record in records)
    report = _json({'k': config.k, 'max_children': config.max_children, 'tolerance': config.check_tol,
                    'passed': passed, 'checks': records})
    _emit(report, config.out)
    if not passed:
        worst = max(records, key=lambda record: record['tv'])
        raise CheckFailedError("%s: total variation %.3g exceeds %.3g" %
                               (worst['check'], worst['tv'], config.check_tol))


def cmd_cost(config, args):
    table = build_cost_table(config.schedule(), config.k, config.K)
    scalars = {'k': config.k, 'K': config.K, 'p_0k': float(table.p[0]), 'C_k': table.C}
    if config.out:
        _emit(CsvEncoder(['l', 'p', 'D', 'E']).encode(table.rows()), config.out)
        _emit(_json(scalars), config.out + '.json')
    else:
        scalars['rows'] = [{'l': l, 'p': p, 'D': D, 'E': E} for l, p, D, E in table.rows()]
        _emit(_json(scalars), None)


def cmd_simulate(config, args):
    sched = config.schedule()
    outcomes = simulate_costs(sched, config.k, config.K, config.reps, config.require_seed('simulate'))
    mean, stderr = summarize_costs(outcomes)
    if args.records:
        rows = [(rep, outcome.total_cost, outcome.restarts) for rep, outcome in enumerate(outcomes)]
        _emit(CsvEncoder(['rep', 'cost', 'restarts']).encode(rows), args.records)
    exact = build_cost_table(sched, config.k, config.K).C
    _emit(_json({'k': config.k, 'K': config.K, 'reps': config.reps, 'mean': mean, 'stderr': stderr,
                 'C_k': exact, 'mean_restarts': float(np.mean([o.restarts for o in outcomes]))}), config.out)


def cmd_curve(config, args):
    k = config.k
    K = config.K
    bracket = tuple(config.bracket)
    name = config.out if config.out else str(get_experiment())
    with Experiment(name) as exp:
        curve = cost_curve(k, K, config.mu_grid, tol=config.tol)
        _emit(CsvEncoder(['mu', 'C', 'asym_large', 'asym_small']).encode(curve.rows()), exp.path('cost_curve.csv'))

        header = ['k', 'K', 'mu_opt', 'C_opt', 'at_boundary']
        rows = optimum_table([int(value) for value in config.ks], config.Ks, bracket, config.tol)
        byK = sorted(rows, key=lambda row: (row[1], row[0]))
        _emit(CsvEncoder(header).encode(byK), exp.path('optimal_mu_by_k.csv'))
        _emit(CsvEncoder(header).encode(rows), exp.path('optimal_mu_by_K.csv'))
        files = [exp.path(filename) for filename in ('cost_curve.csv', 'optimal_mu_by_k.csv', 'optimal_mu_by_K.csv')]
    sys.stdout.write(_json({'k': k, 'K': K, 'mu_opt': curve.mu_opt, 'C_opt': curve.C_opt,
                            'at_boundary': curve.at_boundary, 'files': files}))


def cmd_optimize(config, args):
    optimum = optimize_mu(config.k, config.K, tuple(config.bracket), config.tol)
    _emit(_json({'k': config.k, 'K': config.K, 'mu_opt': optimum.mu_opt, 'C_opt': optimum.C_opt,
                 'at_boundary': optimum.at_boundary}), config.out)


def cmd_infinite(config, args):
    result = infinite_cost(config.mu, config.K)
    document = dict(result._asdict())
    document['mu_opt_K'] = infinite_mu_opt(config.K).mu_opt
    document['mu_opt_limit'] = mu_opt_limit()
    _emit(_json(document), config.out)


COMMANDS = {
    'survival': (cmd_survival, "survival probabilities p[l] as CSV (l, p)"),
    'sample': (cmd_sample, "sampled trees, one serialization per line"),
    'check': (cmd_check, "total-variation check of the conditioned constructions"),
    'cost': (cmd_cost, "exact search cost table (l, p, D, E) and C_k"),
    'simulate': (cmd_simulate, "Monte Carlo estimate of the search cost"),
    'curve': (cmd_curve, "Poisson cost curve and optimal-mean tables"),
    'optimize': (cmd_optimize, "Poisson mean minimizing the search cost"),
    'infinite': (cmd_infinite, "search cost per level in the infinite Poisson tree"),
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', metavar='PATH', help="YAML or JSON run configuration")
    common.add_argument('--out', metavar='PATH', help="output file (output directory for curve)")
    common.add_argument('--seed', type=int, metavar='N', help="random seed")
    common.add_argument('--reps', type=int, metavar='N', help="Monte Carlo replications")
    common.add_argument('--param', action='append', default=[], metavar='NAME=VALUE',
                        help="override a configuration parameter (repeatable)")
    common.add_argument('--verbose', action='store_true', help="log debugging output to stderr")

    parser = argparse.ArgumentParser(prog='gwtree',
                                     description="Galton-Watson trees conditioned on reaching a level")
    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
    subparsers.required = True
    for name, (_, summary) in COMMANDS.items():
        subparser = subparsers.add_parser(name, parents=[common], help=summary, description=summary)
        if name == 'simulate':
            subparser.add_argument('--records', metavar='PATH', help="per-replication CSV (rep, cost, restarts)")
    return parser


def _overrides(args):
    overrides = dict(parse_assignment(assignment) for assignment in args.param)
    for name in ('out', 'seed', 'reps'):
        value = getattr(args, name)
        if value is not None:
            overrides[name] = value
    return overrides


def _fail(error):
    message = str(error).replace('\n', ' ')
    sys.stderr.write("gwtree: error: %s: %s\n" % (error.category, message))


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format='%(name)s: %(levelname)s: %(message)s', stream=sys.stderr)
    command = COMMANDS[args.command][0]
    log.debug("running %s", args.command)
    try:
        config = RunConfig.from_file(args.config, _overrides(args))
        command(config, args)
    except ConfigError as e:
        _fail(e)
        return EXIT_CONFIG
    except CheckFailedError as e:
        _fail(e)
        return EXIT_CHECK
    except GWTreeException as e:
        _fail(e)
        return EXIT_NUMERIC
    return EXIT_OK

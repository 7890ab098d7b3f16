#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
test_cli
----------------------------------

Tests for the `gwtree` command line.
"""

import os
import json

import pytest

from gwtree import parse
from gwtree.cli import main, build_parser, EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_CHECK


CHAIN = """
schedule:
    default: {kind: table, weights: {1: 1}}
k: 3
K: 2
"""


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


@pytest.fixture
def chain_config(workdir):
    path = workdir/'chain.yaml'
    path.write_text(CHAIN)
    return str(path)


def test_survival(workdir, capsys):
    assert main(['survival', '--param', 'k=2']) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == 'l,p'
    assert len(lines) == 4
    assert lines[-1] == '2,1'


def test_sample_needs_seed(workdir, capsys):
    assert main(['sample']) == EXIT_CONFIG
    assert capsys.readouterr().err.startswith('gwtree: error: config: sample needs a seed')


def test_sample_surviving_trees(workdir, capsys):
    assert main(['sample', '--seed', '4', '--param', 'count=5']) == EXIT_OK
    trees = [parse(line) for line in capsys.readouterr().out.splitlines()]
    assert len(trees) == 5
    assert all(t.height == 3 for t in trees)


def test_sample_types(workdir, capsys):
    argv = ['sample', '--seed', '1', '--param', 'mode=type:3', '--param', 'system=height-band']
    assert main(argv) == EXIT_OK
    trees = [parse(line) for line in capsys.readouterr().out.splitlines()]
    assert len(trees) == 10
    assert all(t.height == 3 for t in trees)


def test_sample_to_file(workdir):
    out = str(workdir/'trees.txt')
    assert main(['sample', '--seed', '2', '--out', out, '--param', 'mode=extinct']) == EXIT_OK
    with open(out) as fp:
        trees = [parse(line) for line in fp]
    assert all(t.height < 3 for t in trees)


def test_check_passes(workdir, capsys):
    assert main(['check', '--param', 'system=grandchildren']) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report['passed']
    assert [check['check'] for check in report['checks']] == ['survival', 'grandchildren']
    assert all(check['tv'] < 1e-10 for check in report['checks'])


def test_check_detects_perturbation(workdir, capsys):
    assert main(['check', '--param', 'perturb=0.05']) == EXIT_CHECK
    captured = capsys.readouterr()
    report = json.loads(captured.out)
    assert not report['passed']
    assert report['checks'][0]['tv'] == pytest.approx(.05, abs=1e-9)
    assert captured.err.splitlines()[-1].startswith('gwtree: error: check-failed:')


def test_cost_table(chain_config, capsys):
    assert main(['cost', '--config', chain_config]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document['C_k'] == pytest.approx(10.)
    assert [row['D'] for row in document['rows']] == pytest.approx([10., 7., 4., 1.])
    assert document['rows'][-1]['E'] is None


def test_cost_files(chain_config, workdir):
    out = str(workdir/'cost.csv')
    assert main(['cost', '--config', chain_config, '--out', out]) == EXIT_OK
    with open(out, newline='') as fp:
        text = fp.read()
    assert text.startswith('l,p,D,E\n')
    assert '\r' not in text
    assert text.splitlines()[-1] == '3,1,1,'
    with open(out + '.json') as fp:
        assert json.load(fp)['C_k'] == pytest.approx(10.)


def test_simulate(chain_config, workdir, capsys):
    records = str(workdir/'reps.csv')
    argv = ['simulate', '--config', chain_config, '--seed', '9', '--reps', '50', '--records', records]
    assert main(argv) == EXIT_OK
    summary = json.loads(capsys.readouterr().out)
    assert summary['mean'] == 10.
    assert summary['stderr'] == 0.
    assert summary['C_k'] == pytest.approx(10.)
    assert summary['mean_restarts'] == 0.
    with open(records) as fp:
        lines = fp.read().splitlines()
    assert lines[0] == 'rep,cost,restarts'
    assert len(lines) == 51


def test_simulate_unreachable_target(workdir, capsys):
    argv = ['simulate', '--seed', '1', '--param', 'schedule={default: {kind: table, weights: {0: 1}}}']
    assert main(argv) == EXIT_NUMERIC
    assert capsys.readouterr().err.startswith('gwtree: error: nontermination:')


def test_optimize(workdir, capsys):
    assert main(['optimize', '--param', 'k=10', '--param', 'K=10']) == EXIT_OK
    assert json.loads(capsys.readouterr().out)['mu_opt'] == pytest.approx(1.68, abs=.01)


def test_infinite(workdir, capsys):
    assert main(['infinite', '--param', 'mu=2', '--param', 'K=1']) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document['C_inf'] == pytest.approx(3.765, abs=1e-3)
    assert 1.75 <= document['mu_opt_limit'] <= 1.76


def test_infinite_subcritical(workdir, capsys):
    assert main(['infinite', '--param', 'mu=1']) == EXIT_NUMERIC
    assert capsys.readouterr().err.startswith('gwtree: error: subcritical:')


def test_curve(workdir, capsys):
    argv = ['curve', '--out', 'fig', '--param', 'k=6', '--param', 'K=4',
            '--param', 'ks=[4, 8]', '--param', 'Ks=[1, 4]']
    assert main(argv) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert len(document['files']) == 3
    for name in ('cost_curve.csv', 'optimal_mu_by_k.csv', 'optimal_mu_by_K.csv'):
        assert os.path.isfile(os.path.join('fig', name))
    with open(os.path.join('fig', 'optimal_mu_by_K.csv')) as fp:
        lines = fp.read().splitlines()
    assert lines[0] == 'k,K,mu_opt,C_opt,at_boundary'
    assert len(lines) == 5


@pytest.mark.parametrize('argv', [
    ['survival', '--param', 'depth=3'],
    ['survival', '--param', 'k'],
    ['survival', '--config', 'missing.yaml'],
    ['check', '--param', 'system=unknown'],
])
def test_configuration_errors(workdir, capsys, argv):
    assert main(argv) == EXIT_CONFIG
    assert capsys.readouterr().err.startswith('gwtree: error: config:')


def test_parser_needs_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_unwritable_output(workdir, capsys):
    out = str(workdir/'missing'/'p.csv')
    assert main(['survival', '--param', 'k=2', '--out', out]) == EXIT_CONFIG
    err = capsys.readouterr().err.splitlines()
    assert len(err) == 1
    assert err[0].startswith('gwtree: error: config: cannot write %s' % (out))


def test_unwritable_experiment_directory(workdir, capsys):
    (workdir/'blocker').write_text('')
    argv = ['curve', '--out', os.path.join('blocker', 'fig'), '--param', 'ks=[4]', '--param', 'Ks=[1]']
    assert main(argv) == EXIT_CONFIG
    err = capsys.readouterr().err.splitlines()
    assert len(err) == 1
    assert err[0].startswith('gwtree: error: config: cannot create experiment directory')


def test_malformed_schedule(workdir, capsys):
    schedule = 'schedule={default: {kind: table, weights: {1: 1}}, 1: {kind: table, weights: {0: -1}}}'
    assert main(['survival', '--param', schedule]) == EXIT_CONFIG
    err = capsys.readouterr().err.splitlines()
    assert len(err) == 1
    assert err[0].startswith('gwtree: error: config: schedule level 1:')


@pytest.mark.parametrize('argv', [
    ['sample', '--seed', '11', '--param', 'count=20'],
    ['sample', '--seed', '11', '--param', 'mode=type:1', '--param', 'system=grandchildren'],
    ['simulate', '--seed', '11', '--reps', '200'],
])
def test_same_seed_same_bytes(workdir, capsys, argv):
    assert main(argv) == EXIT_OK
    first = capsys.readouterr().out
    assert main(argv) == EXIT_OK
    assert capsys.readouterr().out == first
    assert first

#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
test_params
----------------------------------

Tests for the run parameter layer: `gwtree.params`, `gwtree.utils`,
`gwtree.run`, `gwtree.experiment`, `gwtree.encode` and `gwtree.config`.
"""

import os

import numpy as np
import pytest

from gwtree.params import Params, Integer, Number, Text, Choice, List, Dict
from gwtree.utils import parse, getParamsFromDictionary, parse_assignment, schedule_from_document
from gwtree.run import RunConfig, INPUTS
from gwtree.experiment import Experiment, set_experiment, get_experiment
from gwtree.encode import JsonEncoder, CsvEncoder, format_number
from gwtree.config import GWTreeConfig
from gwtree.exceptions import ConfigError


def test_integer_values():
    param = Integer(type='Integer', min=1, value='3')
    assert param.value == 3
    param.value = 2.0
    assert param.value == 2
    for bad in (2.5, 'x', True, 0):
        with pytest.raises(ConfigError):
            param.value = bad


def test_number_values():
    param = Number(type='Number', min=0, max=1)
    param.value = '0.25'
    assert param.value == .25
    for bad in (True, 2, -1, [1]):
        with pytest.raises(ConfigError):
            param.value = bad


def test_list_and_dict_values():
    param = List(type='List', min=0, value=[1, '2.5'])
    assert param.value == [1., 2.5]
    with pytest.raises(ConfigError):
        param.value = [1, -1]
    with pytest.raises(ConfigError):
        param.value = 3
    with pytest.raises(ConfigError):
        Dict(type='Dict', value=[1])
    choice = Choice(type='Choice', options=['a', 'b'], value='a')
    assert choice.value == 'a'
    with pytest.raises(ConfigError):
        choice.value = 'c'


def test_unknown_attributes():
    with pytest.raises(ConfigError):
        Text(type='Text', min=1)
    with pytest.raises(ConfigError):
        Number(type='Number', units='m')


def test_declarations():
    parameters = parse(INPUTS)
    assert set(parameters.keys()) == set(INPUTS)
    assert parameters['k'].value == 3
    assert parameters['k'].min == 1
    assert isinstance(parameters, Params)
    with pytest.raises(ConfigError):
        parse({'x': {'type': 'Complex'}})


def test_values_from_dictionary():
    parameters = getParamsFromDictionary(INPUTS, {'k': 5})
    assert parameters['k'].value == 5
    with pytest.raises(ConfigError):
        getParamsFromDictionary(INPUTS, {'depth': 5})
    with pytest.raises(ConfigError):
        getParamsFromDictionary(INPUTS, {'k': 5}, missingValuesAllowed=False)


@pytest.mark.parametrize('text,expected', [
    ('k=4', ('k', 4)),
    ('K=0.5', ('K', .5)),
    ('mode=type:2', ('mode', 'type:2')),
    ('ks=[4, 8]', ('ks', [4, 8])),
    ('out=', ('out', None)),
])
def test_assignments(text, expected):
    assert parse_assignment(text) == expected


@pytest.mark.parametrize('text', ['k', '=3', 'k=[1'])
def test_bad_assignments(text):
    with pytest.raises(ConfigError):
        parse_assignment(text)


def test_schedule_document():
    document = {'default': {'kind': 'poisson', 'mu': 1.5},
                '1': {'kind': 'table', 'weights': {'0': 1, '2': 3}}}
    sched = schedule_from_document(document, 3)
    assert sched.law(1).pmf(2) == pytest.approx(.75)
    assert sched.law(0).mean() == pytest.approx(1.5)
    assert sched.law(2) is sched.law(0)


@pytest.mark.parametrize('document,message', [
    ({'0': {'kind': 'table', 'weights': {'1': 1}}}, 'schedule level 1'),
    ({'default': {'kind': 'geometric'}}, 'schedule level default'),
    ({'default': {'kind': 'poisson', 'mu': -1}}, 'schedule level default'),
    ({'x': {'kind': 'poisson', 'mu': 1}}, 'not an integer'),
    ({}, 'nonempty'),
])
def test_bad_schedule_documents(document, message):
    with pytest.raises(ConfigError) as error:
        schedule_from_document(document, 2)
    assert message in str(error.value)


def test_run_configuration_defaults():
    config = RunConfig()
    assert config.k == 3
    assert config.K == 1.
    assert config.seed is None
    assert config.type_index() is None
    assert config.schedule().depth == 3
    assert config.schedule(5).depth == 5
    assert config.reps == 1000


def test_run_configuration_overrides(tmp_path):
    path = tmp_path/'run.yaml'
    path.write_text("k: 5\nseed: 3\nsystem: height-band\n")
    config = RunConfig.from_file(str(path), {'k': 6, 'mode': 'type:2'})
    assert config.k == 6
    assert config.seed == 3
    assert config.type_index() == 2
    assert config.type_system('sample').m == 3


@pytest.mark.parametrize('values', [
    {'mode': 'type:0'},
    {'mode': 'sideways'},
    {'system': 'unknown'},
    {'bracket': [5, 1]},
    {'ks': [4.5]},
    {'mu': 0},
    {'k': 0},
    {'depth': 1},
])
def test_invalid_run_configuration(values):
    with pytest.raises(ConfigError):
        RunConfig(values)


def test_run_configuration_files(tmp_path):
    with pytest.raises(ConfigError):
        RunConfig.from_file(str(tmp_path/'missing.yaml'))
    path = tmp_path/'broken.yaml'
    path.write_text("k: [1\n")
    with pytest.raises(ConfigError):
        RunConfig.from_file(str(path))
    path.write_text("- 1\n- 2\n")
    with pytest.raises(ConfigError):
        RunConfig.from_file(str(path))
    with pytest.raises(ConfigError):
        RunConfig().require_seed('simulate')
    with pytest.raises(ConfigError):
        RunConfig().type_system('check')


def test_experiments(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setattr(Experiment, '_experiments', [])
    monkeypatch.setattr(Experiment, 'active', None)
    assert str(get_experiment()) == 'RUNS'
    with Experiment('fig', append=False) as exp:
        assert get_experiment() is exp
        assert exp.path('a.csv') == os.path.join('fig', 'a.csv')
    assert os.path.isdir('fig')
    assert str(set_experiment('other')) == 'other'
    assert str(get_experiment()) == 'other'
    with pytest.raises(ConfigError):
        Experiment('.hidden')


def test_encoders():
    assert format_number(1./3.) == '0.333333333333'
    assert format_number(np.float64(2.)) == '2'
    assert format_number(None) == ''
    assert format_number(True) == 'true'
    text = CsvEncoder(['l', 'E']).encode([(0, 1.5), (1, None)])
    assert text == 'l,E\n0,1.5\n1,\n'
    assert CsvEncoder(['l', 'E']).decode(text) == [['0', '1.5'], ['1', '']]
    encoder = JsonEncoder()
    assert encoder.decode(encoder.encode({'C': np.float64(1./3.), 'ok': True})) == {'C': 0.333333333333, 'ok': True}


def test_environment_configuration(monkeypatch):
    assert GWTreeConfig.get_tail_tol() == 1e-12
    monkeypatch.setenv('GWTREE_MAX_RESTARTS', '12')
    assert GWTreeConfig.get_max_restarts() == 12
    monkeypatch.setenv('GWTREE_MAX_SUPPORT', 'many')
    with pytest.raises(ConfigError):
        GWTreeConfig.get_max_support()

import logging
import math
import os

import pytest
from traitlets import HasTraits, TraitError
from traitlets.config.loader import ArgumentError, ConfigFileNotFound

from ipcfg.csvreporter import CsvReporter, format_value
from ipcfg.extratraitlets import Angle
from ipcfg.json_loader import (FlatJsonConfigLoader, JsonConfigError, config_target, flatten,
                               key_config)
from ipcfg.mziapplication import LevelFormatter
from ipcfg.override_loader import OverrideLoader
from ipcfg.progressreporter import ProgressReporter
from ipcfg.stringangles import str_to_angle


@pytest.mark.parametrize('text, expected', [
    ('0.5*pi', 0.5 * math.pi),
    ('-pi/2', -0.5 * math.pi),
    ('tau / 4', 0.5 * math.pi),
    ('2**-1', 0.5),
    (' 3 ', 3.0),
])
def test_str_to_angle(text, expected):
    assert str_to_angle(text) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize('text', ['', 'deg', '__import__("os")', 'pi.real', '1/0', 'True',
                                  '"pi"', '1e400', '[pi]'])
def test_str_to_angle_rejects(text):
    with pytest.raises(ValueError):
        str_to_angle(text)


class Holder(HasTraits):
    angle = Angle(0.0)
    maybe = Angle(None, allow_none=True)


def test_angle_trait():
    holder = Holder()
    holder.angle = '0.5*pi'
    assert holder.angle == pytest.approx(0.5 * math.pi)
    holder.angle = 1
    assert holder.angle == 1.0
    with pytest.raises(TraitError) as excinfo:
        holder.angle = 'half a turn'
    assert 'half a turn' in str(excinfo.value)
    assert Holder.maybe.from_string('None') is None
    assert Holder.angle.from_string('pi') == 'pi'


def test_flatten_and_targets():
    data = {'port1': {'alpha': {'magnitude': 2, 'phase': '0.5*pi'}}, 'sweep': {'axis': 'beta'}}
    assert dict(flatten(data)) == {'port1.alpha.magnitude': 2, 'port1.alpha.phase': '0.5*pi',
                                   'sweep.axis': 'beta'}
    assert config_target('efficiency') == ('Interferometer', 'efficiency')
    assert config_target('scheme') == ('Detection', 'scheme')
    for key in ('bogus', 'port1.alpha.size', 'sweep.'):
        with pytest.raises(JsonConfigError):
            config_target(key)


def test_key_config():
    config = key_config('port0.xi.factor', 0.5)
    assert config['Port0']['xi_factor'] == 0.5
    known = {'Sweep': {'axis', 'steps'}}
    assert key_config('sweep.steps', 3, known)['Sweep']['steps'] == 3
    with pytest.raises(JsonConfigError) as excinfo:
        key_config('sweep.stpes', 3, known)
    assert excinfo.value.field == 'sweep.stpes'


def write(tmp_path, text, name='scenario.json'):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_json_loader_reads_nested_and_flat_keys(tmp_path):
    path = write(tmp_path, '{\n  "port1": {"alpha": {"magnitude": 2}},\n'
                           '  "port0.xi.factor": 0.5,\n  "pmc": "pmc3"\n}\n')
    config = FlatJsonConfigLoader(path.name, path=str(tmp_path)).load_config()
    assert config['Port1']['alpha_magnitude'] == 2
    assert config['Port0']['xi_factor'] == 0.5
    assert config['Interferometer']['pmc'] == 'pmc3'


def test_json_loader_reports_the_line_of_malformed_json(tmp_path):
    path = write(tmp_path, '{\n  "phase": 1,\n}\n')
    with pytest.raises(JsonConfigError) as excinfo:
        FlatJsonConfigLoader(path.name, path=str(tmp_path)).load_config()
    assert excinfo.value.lineno == 3
    assert 'line 3' in str(excinfo.value)


def test_json_loader_reports_line_and_field_of_unknown_keys(tmp_path):
    path = write(tmp_path, '{\n  "port1": {\n    "alpha": {"magnitud": 1}\n  }\n}\n')
    with pytest.raises(JsonConfigError) as excinfo:
        FlatJsonConfigLoader(path.name, path=str(tmp_path)).load_config()
    assert excinfo.value.lineno == 3
    assert excinfo.value.field == 'port1.alpha.magnitud'

    path = write(tmp_path, '{"sweep": {"axes": "phi"}}', name='sweep.json')
    loader = FlatJsonConfigLoader(path.name, path=str(tmp_path),
                                  known_traits={'Sweep': {'axis'}})
    with pytest.raises(JsonConfigError) as excinfo:
        loader.load_config()
    assert excinfo.value.field == 'sweep.axes'


def test_json_loader_needs_an_object(tmp_path):
    path = write(tmp_path, '[1, 2]')
    with pytest.raises(JsonConfigError):
        FlatJsonConfigLoader(path.name, path=str(tmp_path)).load_config()
    with pytest.raises(ConfigFileNotFound):
        FlatJsonConfigLoader('missing.json', path=str(tmp_path)).load_config()


def test_override_loader():
    loader = OverrideLoader(['--set', 'phase=0.5*pi', '--set=sweep.steps=50', '--steps=3'])
    assert loader.config_file == ''
    assert loader.extra_args == ['--steps=3']
    config = loader.load_config()
    assert config['Interferometer']['phase'] == '0.5*pi'
    assert config['Sweep']['steps'] == 50


def test_override_loader_errors():
    with pytest.raises(JsonConfigError):
        OverrideLoader(['--set', 'phase']).load_config()
    with pytest.raises(JsonConfigError):
        OverrideLoader(['--set', 'sweep.axes=1'], {'Sweep': {'axis'}}).load_config()
    with pytest.raises(ArgumentError):
        OverrideLoader(['--config'])


def test_format_value():
    assert format_value(0.1 + 0.2) == '0.3'
    assert format_value(False) == '0'
    assert format_value(float('nan')) == 'nan'
    assert format_value('pmc1') == 'pmc1'


def test_csv_render():
    reporter = CsvReporter('-', ['x', 'y'], config={'b': 2, 'a': 1}, comments=['first'])
    reporter.comment('second')
    reporter.report([1 / 3, 1])
    reporter.report((2.0, True))
    assert reporter.render() == ('# gaussmzi-csv 1 {"a":1,"b":2}\n'
                                 '# first\n# second\n'
                                 'x,y\n0.333333333333,1\n2,1\n')
    with pytest.raises(ValueError):
        reporter.report([1.0])


def test_csv_write_replaces_atomically(tmp_path):
    path = tmp_path / 'table.csv'
    path.write_text('old contents\n')
    reporter = CsvReporter(str(path), ['x'])
    reporter.report([0.5])
    reporter.write()
    assert path.read_text() == reporter.render()
    assert os.listdir(str(tmp_path)) == ['table.csv']


def test_csv_write_to_stdout(capsys):
    reporter = CsvReporter('-', ['x'])
    reporter.report([7])
    reporter.write()
    assert capsys.readouterr().out.endswith('x\n7\n')


@pytest.mark.parametrize('secs, expected', [
    (5, '0:05'), (61, '1:01'), (3725, '1:02:05'), (90061, '1:1:01:01'), (float('nan'), '??'),
])
def test_pretty_time(secs, expected):
    assert ProgressReporter.pretty_time(secs) == expected


def test_progress_reports_on_interval_and_at_the_end(caplog):
    log = logging.getLogger('test_progress')
    reporter = ProgressReporter(log, total=5, what='cases', report_interval=2)
    with caplog.at_level(logging.INFO, logger='test_progress'):
        for done in range(1, 6):
            reporter.report(done)
    messages = [r.getMessage() for r in caplog.records]
    assert len(messages) == 3
    assert '2/5 cases' in messages[0]
    assert messages[-1].startswith('100.000%')


def test_progress_before_any_work():
    reporter = ProgressReporter(logging.getLogger('test_progress'), total=4)
    reporter.start()
    assert reporter.format(0).endswith('left ??')


def test_level_formatter(monkeypatch):
    monkeypatch.setenv('NO_COLOR', '1')
    formatter = LevelFormatter('[%(name)s]%(highlevel)s %(message)s')

    def record(level):
        return logging.LogRecord('gaussmzi', level, __file__, 1, 'hello', None, None)
    assert formatter.format(record(logging.INFO)) == '[gaussmzi] hello'
    assert formatter.format(record(logging.WARNING)) == '[gaussmzi] WARNING | hello'

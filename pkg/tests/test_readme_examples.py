"""Every chtg invocation in the README runs and exits as documented."""

import pathlib
import re

import pytest

from chtg.cli import main

README = pathlib.Path(__file__).resolve().parent.parent / "README.md"

# scan with t = 1.9 > t_A finds the test-word hit and exits 2
EXPECTED_EXIT = {"chtg scan --p 4 4 inf --t 1.9 --max-len 4 --json": 2}


def readme_commands():
    text = README.read_text()
    return [line.strip() for line in re.findall(r"^chtg .*$", text, re.M)]


@pytest.mark.parametrize("command", readme_commands())
def test_readme_cli_example(command, capsys):
    argv = command.split()[1:]
    code = main(argv)
    out = capsys.readouterr().out
    assert code == EXPECTED_EXIT.get(command, 0), command
    assert out.strip(), command


def test_readme_has_examples():
    assert len(readme_commands()) >= 8

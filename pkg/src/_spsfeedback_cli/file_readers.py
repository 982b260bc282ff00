from configparser import ConfigParser
from configparser import Error as ConfigParserError
from typing import Dict
from typing import IO

import chardet
import click

from _spsfeedback_cli.exceptions import ConfigError


class AutoDecodedFile(click.File):
    """Attempts to autodetect file's encoding prior to normal click.File processing."""

    def convert(self, value, param, ctx):
        try:
            with open(value, "rb") as file:
                self.encoding = chardet.detect(file.read())["encoding"]
        except Exception:
            pass  # we'll let click.File do its own exception handling for the filepath

        return super().convert(value, param, ctx)


def read_sections(file: IO[str]) -> Dict[str, Dict[str, str]]:
    """
    Parse a run configuration file of `key = value` lines grouped under `[section]` headers.

    Keys are lower-cased and values are returned as raw strings; validation happens in `RunConfig`.
    """
    parser = ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        parser.read_file(file)
    except ConfigParserError as err:
        raise ConfigError(f"Unable to parse config file {getattr(file, 'name', '')}: {err}")
    return {section: dict(parser.items(section)) for section in parser.sections()}

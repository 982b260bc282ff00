import difflib
import re

import click
from pydantic import ValidationError

from _spsfeedback_cli.exceptions import ConfigError
from _spsfeedback_cli.exceptions import LoggedCLIError
from _spsfeedback_cli.exceptions import NumericFailure
from _spsfeedback_cli.exceptions import SpsCLIException
from _spsfeedback_sdk.core.client import Simulator
from _spsfeedback_sdk.exceptions import DomainError
from _spsfeedback_sdk.exceptions import InvalidArgumentError
from _spsfeedback_sdk.exceptions import NumericError

_DIFFLIB_CUT_OFF = 0.6


def _validation_message(err: ValidationError) -> str:
    parts = []
    for error in err.errors():
        location = ".".join(str(loc) for loc in error["loc"] if loc != "__root__")
        parts.append(f"{location}: {error['msg']}" if location else error["msg"])
    return "Invalid configuration: " + "; ".join(parts)


class ExceptionHandlingGroup(click.Group):
    """
    A `click.Group` subclass to add custom exception handling.

    Configuration problems exit with code 2 and numerical failures with code 3.
    """

    _original_args = None

    def make_context(self, info_name, args, parent=None, **extra):
        # grab the original command line arguments for logging purposes
        self._original_args = " ".join(args)

        return super().make_context(info_name, args, parent=parent, **extra)

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except click.UsageError as err:
            self._suggest_cmd(err)
        except SpsCLIException:
            raise
        except click.exceptions.Exit:
            raise
        except (InvalidArgumentError, DomainError) as err:
            Simulator()._log_error(err, self._original_args)
            raise ConfigError(err.message)
        except ValidationError as err:
            message = _validation_message(err)
            Simulator()._log_error(message, self._original_args)
            raise ConfigError(message)
        except NumericError as err:
            Simulator()._log_error(err, self._original_args)
            raise NumericFailure(err.message)
        except click.ClickException:
            raise
        except OSError:
            raise
        except Exception as err:
            # log error with traceback and print message pointing user to logs
            Simulator()._log_verbose_error(self._original_args, err)
            raise LoggedCLIError("Unknown problem occurred.")

    @staticmethod
    def _suggest_cmd(usage_err):
        """Handles fuzzy suggestion of commands that are close to the bad command entered."""
        if usage_err.message is not None:
            match = re.match("No such command '(.*)'.", usage_err.message)
            if match:
                bad_arg = match.groups()[0]
                available_commands = list(usage_err.ctx.command.commands.keys())
                suggested_commands = difflib.get_close_matches(
                    bad_arg, available_commands, cutoff=_DIFFLIB_CUT_OFF
                )
                if not suggested_commands:
                    raise usage_err
                usage_err.message = (
                    f"No such command '{bad_arg}'. "
                    f"Did you mean {' or '.join(suggested_commands)}?"
                )
        raise usage_err

import argparse
import sys
from typing import Any, Dict, List, Optional, Tuple

from django.core.management.base import BaseCommand, CommandError
from pydantic import ValidationError

from stg.config import StgSettings, get_stg_settings
from stg.exceptions import STGError
from stg.grammar import Category, parse_category
from stg.services.blending import TransitionModel
from stg.services.corpus import Corpus, load_corpus_file
from stg.services.model_store import load_model

USAGE_ERROR = 1
DATA_ERROR = 2


def parse_weights(value: str) -> Tuple[float, float, float, float]:
    """Parse ``--lambda w,a,b,p``."""
    try:
        weights = tuple(float(part) for part in value.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid weights {value!r}")
    if len(weights) != 4:
        raise argparse.ArgumentTypeError("expected four comma-separated weights: word,alpha,beta,paradigm")
    return weights


class StgCommand(BaseCommand):
    """Base command class for stg subcommands."""

    def log_success(self, message: str) -> None:
        """Log a success message."""
        self.stderr.write(self.style.SUCCESS(message))

    def log_warning(self, message: str) -> None:
        """Log a warning message."""
        self.stderr.write(self.style.WARNING(message))

    @staticmethod
    def add_root_argument(parser) -> None:
        parser.add_argument("--root", help="Category every sentence starts in (default from settings, S)")

    @staticmethod
    def add_strictness_arguments(parser) -> None:
        group = parser.add_mutually_exclusive_group()
        group.add_argument(
            "--strict", dest="strict", action="store_true", default=None, help="Abort on invalid analyses"
        )
        group.add_argument(
            "--lenient", dest="strict", action="store_false", default=None, help="Skip invalid analyses"
        )

    @staticmethod
    def add_decoder_arguments(parser, n_best: bool = True) -> None:
        parser.add_argument("--beam", type=int, help="States kept per token position")
        parser.add_argument("--max-depth", dest="max_depth", type=int, help="Deepest state the decoder enters")
        if n_best:
            parser.add_argument("--n-best", dest="n_best", type=int, help="Parses printed per sentence")
        parser.add_argument("--no-penalty", dest="no_penalty", action="store_true", help="Ignore the length penalty")
        parser.add_argument("--workers", type=int, help="Sentences decoded in parallel")

    def load_settings(self, options: Dict[str, Any]) -> StgSettings:
        overrides = {
            "corpus": {"root": options.get("root"), "strict": options.get("strict")},
            "estimation": {"weights": options.get("weights"), "k": options.get("k"), "tau": options.get("tau")},
            "decoder": {
                "beam_width": options.get("beam"),
                "max_depth": options.get("max_depth"),
                "n_best": options.get("n_best"),
                "use_penalty": False if options.get("no_penalty") else None,
                "workers": options.get("workers"),
            },
        }
        try:
            return get_stg_settings(overrides)
        except ValidationError as e:
            raise CommandError(f"Invalid settings: {e}", returncode=USAGE_ERROR)

    def root_category(self, stg_settings: StgSettings) -> Category:
        try:
            return parse_category(stg_settings.corpus.root)
        except STGError as e:
            raise CommandError(e.message, returncode=USAGE_ERROR)

    def read_corpus(self, path: str, root: Category, strict: bool) -> Corpus:
        try:
            return load_corpus_file(path, root=root, strict=strict)
        except OSError as e:
            raise CommandError(f"Cannot read corpus {path}: {e}", returncode=DATA_ERROR)
        except STGError as e:
            raise CommandError(f"{path}: {e.message}", returncode=DATA_ERROR)

    def read_model(self, path: str) -> TransitionModel:
        try:
            return load_model(path)
        except OSError as e:
            raise CommandError(f"Cannot read model {path}: {e}", returncode=DATA_ERROR)
        except STGError as e:
            raise CommandError(f"{path}: {e.message}", returncode=DATA_ERROR)

    def write_output(self, text: str, path: Optional[str]) -> None:
        if not path:
            self.stdout.write(text, ending="")
            return
        try:
            with open(path, "w", encoding="utf-8") as f:
                f.write(text)
        except OSError as e:
            raise CommandError(f"Cannot write {path}: {e}", returncode=DATA_ERROR)

    def read_lines(self, path: Optional[str]) -> List[str]:
        name = path or "standard input"
        try:
            if not path:
                return sys.stdin.read().splitlines()
            with open(path, "r", encoding="utf-8") as f:
                return f.read().splitlines()
        except OSError as e:
            raise CommandError(f"Cannot read {name}: {e}", returncode=DATA_ERROR)
        except UnicodeDecodeError as e:
            raise CommandError(f"{name}: invalid UTF-8 at byte {e.start}", returncode=DATA_ERROR)

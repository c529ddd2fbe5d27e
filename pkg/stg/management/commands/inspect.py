from django.core.management.base import CommandError

from stg.exceptions import NoTransitionDataError
from stg.grammar import format_state
from stg.services.corpus import normalize_lexeme
from stg.services.unknown import classify_unknown

from ._base import DATA_ERROR, StgCommand


class Command(StgCommand):
    help = "Show the blended transition distribution of a word"

    def add_arguments(self, parser):
        parser.add_argument("--model", required=True, help="Model file written by train")
        parser.add_argument("--word", required=True, help="Word to look up")

    def handle(self, *args, **options):
        model = self.read_model(options["model"])
        word = options["word"]
        try:
            distribution = model.blended_distribution(word)
        except NoTransitionDataError as e:
            raise CommandError(e.message, returncode=DATA_ERROR)

        lexeme = normalize_lexeme(word)
        if lexeme in model.counts:
            paradigm = model.paradigm_of(lexeme)
            header = f"# word = {lexeme}\tcount={model.counts[lexeme]}\tparadigm={paradigm.name if paradigm else '-'}"
        else:
            header = f"# word = {word}\tunknown\tclass={classify_unknown(word).value}"

        rows = sorted(
            distribution.items(),
            key=lambda item: (-item[1], format_state(item[0].source), format_state(item[0].target)),
        )
        lines = [header] + [f"{format_state(t.source)}\t{format_state(t.target)}\t{p:.6f}" for t, p in rows]
        self.stdout.write("\n".join(lines))

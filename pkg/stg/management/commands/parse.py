from stg.services.corpus import tokenize
from stg.services.decoder import DecoderService, format_parses

from ._base import StgCommand


class Command(StgCommand):
    help = "Parse raw sentences, one per line, with a trained model"

    def add_arguments(self, parser):
        parser.add_argument("--model", required=True, help="Model file written by train")
        parser.add_argument("--input", help="Sentences to parse (default: standard input)")
        parser.add_argument("--out", help="Where to write parses (default: standard output)")
        self.add_decoder_arguments(parser)
        self.add_root_argument(parser)

    def handle(self, *args, **options):
        stg_settings = self.load_settings(options)
        model = self.read_model(options["model"])
        root = self.root_category(stg_settings) if options.get("root") else None

        sentences = [tokenize(line) for line in self.read_lines(options.get("input")) if line.strip()]
        service = DecoderService(model, stg_settings.decoder, root)
        results = service.decode_many(sentences)

        ranked = stg_settings.decoder.n_best > 1
        blocks = [format_parses(sentence, parses, ranked) for sentence, parses in zip(sentences, results)]
        self.write_output("\n".join(blocks), options.get("out"))

        missing = sum(1 for parses in results if not parses)
        if missing:
            self.log_warning(f"{missing} of {len(sentences)} sentences could not be parsed")

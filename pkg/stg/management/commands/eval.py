from stg.services.evaluation import evaluate, render_report

from ._base import StgCommand


class Command(StgCommand):
    help = "Parse a gold treebank and classify each sentence as CORRECT, WRONG or NOPARSE"

    def add_arguments(self, parser):
        parser.add_argument("--model", required=True, help="Model file written by train")
        parser.add_argument("--corpus", required=True, help="Gold treebank")
        parser.add_argument("--out", help="Where to write the report (default: standard output)")
        parser.add_argument("--machine", action="store_true", help="Write only id<TAB>verdict lines")
        self.add_decoder_arguments(parser, n_best=False)
        self.add_root_argument(parser)
        self.add_strictness_arguments(parser)

    def handle(self, *args, **options):
        stg_settings = self.load_settings(options)
        model = self.read_model(options["model"])
        root = self.root_category(stg_settings)
        corpus = self.read_corpus(options["corpus"], root, stg_settings.corpus.strict)

        result = evaluate(model, corpus, stg_settings.decoder, root if options.get("root") else None)
        self.write_output(render_report(result, machine=options.get("machine", False)), options.get("out"))

import io
import json
import os
import tempfile
import unittest

from lpfchains.chains import Chain, validate_chain
from lpfchains.construct import paper_greedy
from lpfchains.constants import TRACE_COLUMNS
from lpfchains.errors import ChainFormatError
from lpfchains.reports import (
    CsvReportWriter,
    HumanReportWriter,
    JsonReportWriter,
    Report,
    Workbook,
    XlsxReportWriter,
    chain_records,
    chain_rows,
    load_chain,
    read_chain_csv,
    read_chain_json,
    writer_for,
)


class ReportWriterTests(unittest.TestCase):
    """Testes dos gravadores de relatorio."""

    def setUp(self):
        """Relatorio pequeno com celula vazia, booleano e real."""
        self.report = Report("teste", ["n", "g", "ok", "ratio"], [(10, None, True, 0.5), (100, 7, False, 1.25)])

    def test_csv_output(self):
        """CSV com virgula, \\n, vazio para None e booleanos em minusculas."""
        buffer = io.StringIO()
        CsvReportWriter().write(self.report, buffer)

        self.assertEqual("n,g,ok,ratio\n10,,true,0.5\n100,7,false,1.25\n", buffer.getvalue())

    def test_json_output_uses_header_keys(self):
        """JSON com as chaves do cabecalho, na mesma ordem."""
        buffer = io.StringIO()
        JsonReportWriter().write(self.report, buffer)
        data = json.loads(buffer.getvalue())

        self.assertEqual(["n", "g", "ok", "ratio"], list(data[0]))
        self.assertIsNone(data[0]["g"])
        self.assertIs(True, data[0]["ok"])

    def test_json_payload_replaces_records(self):
        """payload, quando presente, e o documento JSON."""
        buffer = io.StringIO()
        JsonReportWriter().write(Report("exact", ["n", "g"], [(10, 3)], payload={"n": 10, "g": 3}), buffer)

        self.assertEqual({"n": 10, "g": 3}, json.loads(buffer.getvalue()))

    def test_human_output(self):
        """Texto usa lines quando informado e tabela alinhada caso contrario."""
        buffer = io.StringIO()
        HumanReportWriter().write(Report("x", ["n"], [(1,)], lines=["linha unica"]), buffer)
        self.assertEqual("linha unica\n", buffer.getvalue())

        buffer = io.StringIO()
        HumanReportWriter().write(self.report, buffer)
        self.assertEqual(3, len(buffer.getvalue().splitlines()))

    @unittest.skipIf(Workbook is None, "openpyxl nao instalado")
    def test_xlsx_output(self):
        """Planilha com cabecalho e linhas do relatorio."""
        from openpyxl import load_workbook

        buffer = io.BytesIO()
        XlsxReportWriter().write(self.report, buffer)
        buffer.seek(0)
        ws = load_workbook(buffer).active

        self.assertEqual("teste", ws.title)
        self.assertEqual(["n", "g", "ok", "ratio"], [cell.value for cell in ws[1]])
        self.assertEqual(100, ws.cell(row=3, column=1).value)

    def test_unknown_format(self):
        """Formato desconhecido gera ValueError."""
        with self.assertRaises(ValueError):
            writer_for("pdf")


class ChainFileTests(unittest.TestCase):
    """Testes de leitura e gravacao de cadeias."""

    def setUp(self):
        """Cadeia gulosa de n = 100."""
        self.chain = paper_greedy(100).chain

    def test_csv_round_trip(self):
        """Cadeia gravada em CSV volta igual e valida."""
        buffer = io.StringIO()
        CsvReportWriter().write(Report("chain", ["i", "a", "p"], chain_rows(self.chain)), buffer)
        buffer.seek(0)
        chain = Chain.from_pairs(100, read_chain_csv(buffer))

        self.assertEqual(self.chain.elements, chain.elements)
        self.assertTrue(validate_chain(chain))

    def test_csv_skips_overshoot_rows(self):
        """Linhas com overshoot_flag = 1 ficam fora da cadeia lida."""
        text = ",".join(TRACE_COLUMNS) + "\n1,19,19,1,19,0\n2,34,17,2,36,1\n"

        self.assertEqual([(19, 19)], read_chain_csv(io.StringIO(text)))

    def test_csv_requires_columns(self):
        """CSV sem colunas a e p gera ChainFormatError."""
        with self.assertRaises(ChainFormatError):
            read_chain_csv(io.StringIO("x,y\n1,2\n"))
        with self.assertRaises(ChainFormatError):
            read_chain_csv(io.StringIO("a,p\n19,dezenove\n"))

    def test_json_list_and_object(self):
        """Aceita lista de {a, p} ou objeto com witness."""
        records = chain_records(self.chain)
        self.assertEqual([(19, 19), (34, 17), (39, 13), (44, 11)], read_chain_json(io.StringIO(json.dumps(records))))
        document = json.dumps({"n": 100, "g": 4, "witness": records})
        self.assertEqual(4, len(read_chain_json(io.StringIO(document))))

    def test_json_rejects_invalid(self):
        """JSON malformado ou sem lista gera ChainFormatError."""
        with self.assertRaises(ChainFormatError):
            read_chain_json(io.StringIO("{"))
        with self.assertRaises(ChainFormatError):
            read_chain_json(io.StringIO('{"n": 100}'))
        with self.assertRaises(ChainFormatError):
            read_chain_json(io.StringIO("[1, 2]"))

    def test_load_chain_by_extension(self):
        """load_chain escolhe o leitor pela extensao do arquivo."""
        with tempfile.TemporaryDirectory() as folder:
            path = os.path.join(folder, "cadeia.json")
            with open(path, "w", encoding="utf-8") as handle:
                json.dump(chain_records(self.chain), handle)
            chain = load_chain(path, 100)

        self.assertEqual(self.chain.elements, chain.elements)

    def test_load_chain_missing_file(self):
        """Arquivo inexistente gera ChainFormatError."""
        with self.assertRaises(ChainFormatError):
            load_chain("/caminho/que/nao/existe.csv", 100)


if __name__ == "__main__":
    unittest.main()

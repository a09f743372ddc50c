"""
Persistência dos relatórios da CLI com retenção dos mais recentes.
"""

import json
from datetime import datetime
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import pandas as pd

from config import export_config, limits, paths, settings
from utils.logger import get_logger
from utils.validators import slugify


class ReportManager:
    """Gerenciador de relatórios salvos com --save-report"""

    PREFIXO = "relatorio"

    def __init__(self, pasta: Optional[Union[str, Path]] = None, max_relatorios: int = limits.MAX_REPORTS):
        self.pasta = Path(pasta) if pasta is not None else paths.REPORTS_DIR
        self.max_relatorios = max_relatorios
        self.logger = get_logger(self.__class__.__name__)
        self.pasta.mkdir(parents=True, exist_ok=True)

    def _nome_base(self, verbo: str) -> str:
        timestamp = datetime.now().strftime(settings.DATETIME_FORMAT + "_%f")
        return f"{self.PREFIXO}_{slugify(verbo) or 'cli'}_{timestamp}"

    @staticmethod
    def tabela_stats(relatorio: dict) -> pd.DataFrame:
        """Uma linha por relatório com as estatísticas achatadas (chaves "a.b")."""
        linha = {"verb": relatorio.get("verb"), "verdict": relatorio.get("verdict")}
        stats = pd.json_normalize(relatorio.get("stats") or {}, sep=".")
        if not stats.empty:
            linha.update({k: _celula(v) for k, v in stats.iloc[0].items()})
        return pd.DataFrame([linha])

    def salvar_relatorio(self, relatorio: dict, formatos: Sequence[str] = ("json",)) -> Tuple[bool, str]:
        """
        Salva o relatório em JSON e, opcionalmente, em "csv" e "xlsx".

        Returns:
            Tuple[bool, str]: (sucesso, caminho do JSON ou mensagem de erro)
        """
        try:
            base = self.pasta / self._nome_base(relatorio.get("verb", ""))
            caminho = base.with_suffix(".json")
            with open(caminho, "w", encoding=settings.DEFAULT_ENCODING) as f:
                json.dump(relatorio, f, ensure_ascii=False, indent=export_config.JSON_INDENT, default=str)

            if "csv" in formatos or "xlsx" in formatos:
                df = self.tabela_stats(relatorio)
                if "csv" in formatos:
                    df.to_csv(base.with_suffix(".csv"), sep=export_config.CSV_SEPARATOR,
                              encoding=export_config.CSV_ENCODING, index=False)
                if "xlsx" in formatos:
                    df.to_excel(base.with_suffix(".xlsx"), index=False,
                                sheet_name=export_config.EXCEL_SHEET_NAME,
                                engine=export_config.EXCEL_ENGINE)

            self._limpar_relatorios_antigos()
            self.logger.info("Relatório salvo: %s", caminho.name)
            return True, str(caminho)
        except (OSError, TypeError, ValueError) as e:
            self.logger.error("Erro ao salvar relatório: %s", e, exc_info=True)
            return False, f"Erro ao salvar relatório: {e}"

    def _arquivos(self, extensao: str) -> List[Path]:
        arquivos = list(self.pasta.glob(f"{self.PREFIXO}_*.{extensao}"))
        # nome carrega o timestamp; empates de mtime não reordenam
        arquivos.sort(key=lambda p: (p.stat().st_mtime, p.name), reverse=True)
        return arquivos

    def _limpar_relatorios_antigos(self) -> None:
        """Remove relatórios antigos mantendo apenas os últimos N"""
        for antigo in self._arquivos("json")[self.max_relatorios:]:
            for extensao in (".json", ".csv", ".xlsx"):
                irmao = antigo.with_suffix(extensao)
                if irmao.exists():
                    irmao.unlink()
            self.logger.debug("Relatório removido: %s", antigo.name)

def _celula(valor):
    """Listas e dicionários viram texto JSON numa célula."""
    if isinstance(valor, (list, dict)):
        return json.dumps(valor, ensure_ascii=False, default=str)
    return valor

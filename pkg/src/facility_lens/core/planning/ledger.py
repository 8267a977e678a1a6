from pathlib import Path
from typing import Dict, List

import yaml

from facility_lens.core.domain.models import Objective, TableRow


class TableLedger:
    """Stored summary table, one :class:`TableRow` per YAML entry."""

    def __init__(self, definition_file: str = "table1.yaml"):
        self.definition_path = Path(__file__).parent / definition_file
        self.rows: List[TableRow] = [self._to_row(d) for d in self._load_definitions()]

    def _load_definitions(self) -> List[Dict]:
        with open(self.definition_path, "r") as f:
            return yaml.safe_load(f) or []

    @staticmethod
    def _to_row(raw: Dict) -> TableRow:
        def cells(key: str) -> Dict[Objective, tuple[str, str]]:
            return {Objective(obj): (str(c), str(r)) for obj, (c, r) in raw[key].items()}

        return TableRow(
            id=raw["id"],
            section=raw["section"],
            label=raw["label"],
            family=raw.get("family"),
            param=None if raw.get("param") is None else str(raw["param"]),
            cited=bool(raw.get("cited", False)),
            stored=cells("stored"),
        )

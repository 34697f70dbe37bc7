"""Unknown names (stems, zodiac signs, size names) and iroha term labels."""

from __future__ import annotations

from dataclasses import dataclass

MAIN = "main-element"
AUXILIARY = "auxiliary-line"
SIZE = "size-name"


@dataclass(frozen=True)
class Symbol:
    glyph: str
    ascii_alias: str
    role: str
    rank: int  # position in the fixed printing order

    def __repr__(self) -> str:
        return f"Symbol({self.glyph})"

    def __lt__(self, other: Symbol) -> bool:
        return self.rank < other.rank


_SIZES = [("大", "dai"), ("中", "chu"), ("小", "sho")]

# 甲/庚 and 己/癸 share on-readings, so the second of each pair takes its kun reading
STEMS = [
    ("甲", "kou"),
    ("乙", "otsu"),
    ("丙", "hei"),
    ("丁", "tei"),
    ("戊", "bo"),
    ("己", "ki"),
    ("庚", "kanoe"),
    ("辛", "shin"),
    ("壬", "jin"),
    ("癸", "mizunoto"),
]

ZODIAC = [
    ("子", "ne"),
    ("丑", "ushi"),
    ("寅", "tora"),
    ("卯", "u"),
    ("辰", "tatsu"),
    ("巳", "mi"),
    ("午", "uma"),
    ("未", "hitsuji"),
    ("申", "saru"),
    ("酉", "tori"),
    ("戌", "inu"),
    ("亥", "i"),
]

GLYPH_VARIANTS = {"兔": "卯"}
ALIAS_VARIANTS = {"sara": "saru"}


class SymbolTable:
    """Lookup from glyph or ascii alias to :class:`Symbol`."""

    def __init__(self):
        self.symbols: list[Symbol] = []
        rank = 0
        for group, role in ((_SIZES, SIZE), (STEMS, MAIN), (ZODIAC, AUXILIARY)):
            for glyph, alias in group:
                self.symbols.append(Symbol(glyph, alias, role, rank))
                rank += 1
        self._by_glyph = {s.glyph: s for s in self.symbols}
        self._by_alias = {s.ascii_alias: s for s in self.symbols}
        assert len(self._by_alias) == len(self.symbols), "aliases must be unique"

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, key: str) -> bool:
        return self.get(key) is not None

    def get(self, key: str) -> Symbol | None:
        key = GLYPH_VARIANTS.get(key, key)
        key = ALIAS_VARIANTS.get(key, key)
        return self._by_glyph.get(key) or self._by_alias.get(key)

    def __getitem__(self, key: str) -> Symbol:
        sym = self.get(key)
        if sym is None:
            raise KeyError(key)
        return sym

    def by_role(self, role: str) -> list[Symbol]:
        return [s for s in self.symbols if s.role == role]


SYMBOLS = SymbolTable()
DAI, CHU, SHO = SYMBOLS["大"], SYMBOLS["中"], SYMBOLS["小"]


IROHA = "イロハニホヘトチリ"
IROHA_ASCII = ("i", "ro", "ha", "ni", "ho", "he", "to", "chi", "ri")
# the transcription prints 口 (kanji "mouth") where the katakana ロ is meant
IROHA_VARIANTS = {"口": "ロ"}


class IrohaExhausted(ValueError):
    pass


@dataclass(frozen=True)
class IrohaLabel:
    index: int  # 1-based

    def __post_init__(self):
        if not 1 <= self.index <= len(IROHA):
            raise IrohaExhausted(f"iroha label index {self.index} out of range 1..9")

    @property
    def glyph(self) -> str:
        return IROHA[self.index - 1]

    @property
    def ascii_alias(self) -> str:
        return IROHA_ASCII[self.index - 1]

    @classmethod
    def lookup(cls, key: str) -> IrohaLabel | None:
        key = IROHA_VARIANTS.get(key, key)
        if key in IROHA:
            return cls(IROHA.index(key) + 1)
        if key in IROHA_ASCII:
            return cls(IROHA_ASCII.index(key) + 1)
        return None


# display names bound to expressions; expanded when parsed as factors
ALIASES = {
    "大徑": "dai",
    "大径": "dai",
    "中徑": "chu",
    "中径": "chu",
    "小徑": "sho",
    "小径": "sho",
    "中小径和": "chu + sho",
    "中小徑和": "chu + sho",
}

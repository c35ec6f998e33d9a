"""Fixed vocabulary of named colors used as series labels.

Every figure label is one of these names and every series is drawn in the
named color, so label identity is visible in the raster even though no text
is drawn. Names are title-cased; multi-word names tokenize to their words.
"""

COLOR_TABLE: list[tuple[str, tuple[int, int, int]]] = [
    ("Yellow", (255, 255, 0)),
    ("Magenta", (255, 0, 255)),
    ("Sky Blue", (135, 206, 235)),
    ("Violet", (238, 130, 238)),
    ("Lawn Green", (124, 252, 0)),
    ("Dark Magenta", (139, 0, 139)),
    ("Red", (255, 0, 0)),
    ("Blue", (0, 0, 255)),
    ("Green", (0, 128, 0)),
    ("Orange", (255, 165, 0)),
    ("Purple", (128, 0, 128)),
    ("Cyan", (0, 255, 255)),
    ("Brown", (165, 42, 42)),
    ("Pink", (255, 192, 203)),
    ("Gold", (255, 215, 0)),
    ("Navy", (0, 0, 128)),
    ("Teal", (0, 128, 128)),
    ("Coral", (255, 127, 80)),
    ("Salmon", (250, 128, 114)),
    ("Khaki", (240, 230, 140)),
    ("Indigo", (75, 0, 130)),
    ("Maroon", (128, 0, 0)),
    ("Olive", (128, 128, 0)),
    ("Orchid", (218, 112, 214)),
    ("Plum", (221, 160, 221)),
    ("Tomato", (255, 99, 71)),
    ("Turquoise", (64, 224, 208)),
    ("Crimson", (220, 20, 60)),
    ("Chocolate", (210, 105, 30)),
    ("Firebrick", (178, 34, 34)),
    ("Gray", (128, 128, 128)),
    ("Dark Blue", (0, 0, 139)),
    ("Dark Cyan", (0, 139, 139)),
    ("Dark Green", (0, 100, 0)),
    ("Dark Khaki", (189, 183, 107)),
    ("Dark Orange", (255, 140, 0)),
    ("Dark Orchid", (153, 50, 204)),
    ("Dark Red", (139, 0, 0)),
    ("Dark Salmon", (233, 150, 122)),
    ("Deep Pink", (255, 20, 147)),
    ("Dodger Blue", (30, 144, 255)),
    ("Forest Green", (34, 139, 34)),
    ("Hot Pink", (255, 105, 180)),
    ("Indian Red", (205, 92, 92)),
    ("Royal Blue", (65, 105, 225)),
    ("Sea Green", (46, 139, 87)),
    ("Slate Blue", (106, 90, 205)),
    ("Steel Blue", (70, 130, 180)),
]

COLOR_NAMES: list[str] = [name for name, _ in COLOR_TABLE]
COLOR_RGB: dict[str, tuple[int, int, int]] = dict(COLOR_TABLE)

class FourierLcuColors:
    """Console color scheme."""

    PRIMARY = "medium_purple1"
    PRIMARY_LIGHT = "cornflower_blue"

    # Semantic Colors
    SUCCESS = "green"
    WARNING = "yellow"
    ERROR = "red"
    INFO = "cyan"

    # Text Hierarchy
    TEXT_PRIMARY = "white"
    TEXT_DIM = "grey70"

    # Interactive Elements
    COMMAND = "bright_cyan"
    VALUE = "bright_green"

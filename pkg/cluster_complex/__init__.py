__version__ = "0.1.0"

__all__ = [
	"algebra",
	"cli",
	"complex",
	"config",
	"fixtures",
	"homext",
	"measure",
	"reports",
	"roots",
	"service",
	"tilting",
]

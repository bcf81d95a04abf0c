"""Word lists for the rule-based analyzer.

Tuned for requirements prose: modal-heavy, third person, lots of
system/data vocabulary. Coverage is deliberately closed-class-first; open
class words fall back to suffix rules in :mod:`.analyzer`.
"""

# pronoun surface -> (class, person, number, gender)
# number: "Sing" | "Plur" | None (unknown), gender: "masc" | "fem" | "neut" | None
PRONOUNS: dict[str, tuple[str, int, str | None, str | None]] = {
    "i": ("personal", 1, "Sing", None),
    "me": ("personal", 1, "Sing", None),
    "we": ("personal", 1, "Plur", None),
    "us": ("personal", 1, "Plur", None),
    "you": ("personal", 2, None, None),
    "he": ("personal", 3, "Sing", "masc"),
    "him": ("personal", 3, "Sing", "masc"),
    "she": ("personal", 3, "Sing", "fem"),
    "her": ("personal", 3, "Sing", "fem"),
    "it": ("personal", 3, "Sing", "neut"),
    "they": ("personal", 3, "Plur", None),
    "them": ("personal", 3, "Plur", None),
    "my": ("possessive", 1, "Sing", None),
    "mine": ("possessive", 1, "Sing", None),
    "our": ("possessive", 1, "Plur", None),
    "ours": ("possessive", 1, "Plur", None),
    "your": ("possessive", 2, None, None),
    "yours": ("possessive", 2, None, None),
    "his": ("possessive", 3, "Sing", "masc"),
    "hers": ("possessive", 3, "Sing", "fem"),
    "its": ("possessive", 3, "Sing", "neut"),
    "their": ("possessive", 3, "Plur", None),
    "theirs": ("possessive", 3, "Plur", None),
    "myself": ("reflexive", 1, "Sing", None),
    "ourselves": ("reflexive", 1, "Plur", None),
    "yourself": ("reflexive", 2, "Sing", None),
    "yourselves": ("reflexive", 2, "Plur", None),
    "himself": ("reflexive", 3, "Sing", "masc"),
    "herself": ("reflexive", 3, "Sing", "fem"),
    "itself": ("reflexive", 3, "Sing", "neut"),
    "themselves": ("reflexive", 3, "Plur", None),
    "this": ("demonstrative", 3, "Sing", "neut"),
    "that": ("demonstrative", 3, "Sing", "neut"),
    "these": ("demonstrative", 3, "Plur", "neut"),
    "those": ("demonstrative", 3, "Plur", "neut"),
}

POSSESSIVE_DETERMINERS = {"my", "our", "your", "his", "its", "their"}  # + "her" before a noun
WH_PRONOUNS = {"which", "who", "whom", "whose", "what", "whoever", "whatever", "whichever"}

DETERMINERS = {
    "the", "a", "an", "each", "every", "all", "any", "some", "no", "another",
    "both", "either", "neither", "such", "several", "many", "few", "much", "other",
}
DEMONSTRATIVES = {"this", "that", "these", "those"}
DEFINITE_DETS = {"the", "this", "that", "these", "those"}
INDEFINITE_DETS = {"a", "an", "some", "any", "another", "several", "many", "few"}

MODALS = {"shall", "should", "must", "will", "would", "can", "could", "may", "might", "cannot"}
BE_FORMS = {"be", "is", "are", "was", "were", "been", "being", "am"}
HAVE_FORMS = {"have", "has", "had", "having"}
DO_FORMS = {"do", "does", "did"}

COORD_CONJ = {"and", "or", "nor", "but"}
SUBORD_CONJ = {
    "if", "when", "whenever", "while", "because", "although", "though", "unless",
    "whether", "since", "where", "wherever", "once", "so",
}
PREPOSITIONS = {
    "of", "in", "on", "at", "by", "for", "from", "with", "without", "into", "onto",
    "upon", "within", "through", "throughout", "over", "under", "between", "among",
    "after", "before", "during", "about", "against", "via", "per", "across",
    "toward", "towards", "until", "except", "than", "like", "above", "below",
    "behind", "beyond", "inside", "outside", "near", "along", "around", "besides",
    "despite", "following", "regarding", "concerning", "including",
}
ADVERBS = {
    "not", "only", "also", "never", "always", "then", "there", "here", "very",
    "more", "most", "less", "least", "already", "again", "still", "just", "even",
    "often", "soon", "now", "later", "together", "otherwise", "however", "thus",
    "therefore", "hence", "instead", "else", "too", "as", "well", "at_least",
    "once", "ever", "yet", "further",
}
NUMBER_WORDS = {
    "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten",
    "eleven", "twelve", "twenty", "thirty", "hundred", "thousand", "zero",
}

# -ly words that are not adverbs
LY_NON_ADVERBS = {
    "apply": "VERB", "supply": "VERB", "reply": "VERB", "rely": "VERB", "fly": "VERB",
    "multiply": "VERB", "comply": "VERB", "family": "NOUN", "assembly": "NOUN",
    "anomaly": "NOUN", "italy": "PROPN", "july": "PROPN", "daily": "ADJ",
    "weekly": "ADJ", "monthly": "ADJ", "yearly": "ADJ", "hourly": "ADJ",
    "early": "ADJ", "friendly": "ADJ", "only": "ADV", "likely": "ADJ",
    "unlikely": "ADJ", "costly": "ADJ", "timely": "ADJ", "elderly": "ADJ",
    "lonely": "ADJ", "holy": "ADJ", "ugly": "ADJ", "silly": "ADJ", "orderly": "ADJ",
}

# base-form verbs common in requirements; many double as nouns
VERBS = {
    "accept", "access", "add", "alert", "allow", "analyse", "analyze", "apply",
    "approve", "archive", "assign", "audit", "authenticate", "authorize", "back",
    "backup", "become", "begin", "block", "broadcast", "build", "calculate", "call",
    "cancel", "capture", "change", "check", "choose", "clear", "close", "collect",
    "compare", "compress", "compute", "configure", "confirm", "connect", "contain",
    "control", "convert", "copy", "correct", "create", "decrypt", "define", "delete",
    "deliver", "deny", "deploy", "describe", "destroy", "detect", "determine",
    "disable", "discard", "display", "distribute", "download", "edit", "enable",
    "encrypt", "enforce", "ensure", "enter", "erase", "estimate", "evaluate",
    "execute", "exit", "export", "extract", "fail", "fetch", "filter", "find",
    "flag", "forward", "generate", "get", "give", "grant", "handle", "help", "hide",
    "hold", "identify", "ignore", "import", "include", "indicate", "inform",
    "initiate", "insert", "inspect", "install", "interrupt", "issue", "keep", "label",
    "launch", "let", "limit", "link", "list", "load", "locate", "lock", "log",
    "maintain", "make", "manage", "mark", "measure", "merge", "migrate", "modify",
    "monitor", "move", "need", "notify", "obtain", "offer", "open", "operate",
    "order", "output", "overwrite", "parse", "pass", "pause", "perform", "permit",
    "persist", "place", "play", "poll", "post", "present", "preserve", "prevent",
    "print", "process", "produce", "prohibit", "prompt", "protect", "provide",
    "publish", "purge", "push", "put", "query", "queue", "raise", "reach", "read",
    "receive", "record", "recover", "redirect", "refresh", "register", "reject",
    "release", "reload", "remain", "remove", "rename", "render", "repair", "repeat",
    "replace", "report", "request", "require", "reset", "resolve", "respond",
    "restart", "restore", "restrict", "resume", "retain", "retrieve", "return",
    "review", "revoke", "rotate", "route", "run", "save", "scan", "schedule",
    "search", "secure", "select", "send", "serve", "set", "share", "show",
    "shut", "sign", "sort", "specify", "split", "start", "stop", "store", "submit",
    "supply", "support", "suspend", "switch", "sync", "synchronize", "take",
    "terminate", "test", "track", "transfer", "transform", "translate", "transmit",
    "trigger", "turn", "undo", "unlock", "update", "upgrade", "upload", "use",
    "validate", "verify", "view", "warn", "wipe", "write", "want", "seem", "appear",
}

IRREGULAR_VERBS = {
    # form -> (lemma, fine tag)
    "read": ("read", "VB"), "written": ("write", "VBN"), "wrote": ("write", "VBD"),
    "sent": ("send", "VBN"), "kept": ("keep", "VBN"), "made": ("make", "VBN"),
    "took": ("take", "VBD"), "taken": ("take", "VBN"), "gave": ("give", "VBD"),
    "given": ("give", "VBN"), "got": ("get", "VBN"), "gotten": ("get", "VBN"),
    "ran": ("run", "VBD"), "held": ("hold", "VBN"), "built": ("build", "VBN"),
    "began": ("begin", "VBD"), "begun": ("begin", "VBN"), "chosen": ("choose", "VBN"),
    "chose": ("choose", "VBD"), "found": ("find", "VBN"), "shown": ("show", "VBN"),
    "hidden": ("hide", "VBN"), "hid": ("hide", "VBD"), "became": ("become", "VBD"),
    "set": ("set", "VB"), "put": ("put", "VB"), "shut": ("shut", "VB"),
    "split": ("split", "VB"), "let": ("let", "VB"), "broadcast": ("broadcast", "VB"),
    "output": ("output", "VB"), "is": ("be", "VBZ"), "are": ("be", "VBP"),
    "was": ("be", "VBD"), "were": ("be", "VBD"), "been": ("be", "VBN"),
    "being": ("be", "VBG"), "am": ("be", "VBP"), "be": ("be", "VB"),
    "has": ("have", "VBZ"), "had": ("have", "VBD"), "having": ("have", "VBG"),
    "have": ("have", "VB"), "does": ("do", "VBZ"), "did": ("do", "VBD"),
    "done": ("do", "VBN"), "do": ("do", "VB"),
}

IRREGULAR_NOUNS = {
    "data": ("data", "Plur"), "criteria": ("criterion", "Plur"), "indices": ("index", "Plur"),
    "matrices": ("matrix", "Plur"), "analyses": ("analysis", "Plur"), "people": ("person", "Plur"),
    "children": ("child", "Plur"), "men": ("man", "Plur"), "women": ("woman", "Plur"),
    "media": ("medium", "Plur"), "feet": ("foot", "Plur"), "mice": ("mouse", "Plur"),
    "staff": ("staff", None), "software": ("software", "Sing"), "hardware": ("hardware", "Sing"),
    "information": ("information", "Sing"), "equipment": ("equipment", "Sing"),
    "status": ("status", "Sing"), "access": ("access", "Sing"), "process": ("process", "Sing"),
    "address": ("address", "Sing"), "class": ("class", "Sing"), "bus": ("bus", "Sing"),
    "analysis": ("analysis", "Sing"), "basis": ("basis", "Sing"), "axis": ("axis", "Sing"),
    "series": ("series", None), "news": ("news", "Sing"), "radius": ("radius", "Sing"),
    "campus": ("campus", "Sing"), "virus": ("virus", "Sing"), "gas": ("gas", "Sing"),
    "alias": ("alias", "Sing"), "canvas": ("canvas", "Sing"), "lens": ("lens", "Sing"),
    "obliteration": ("obliteration", "Sing"),
}

ADJECTIVES = {
    "able", "unable", "new", "old", "valid", "invalid", "available", "unavailable",
    "possible", "impossible", "necessary", "unnecessary", "secure", "insecure",
    "current", "previous", "next", "last", "first", "second", "third", "final",
    "same", "different", "other", "main", "primary", "secondary", "complete",
    "incomplete", "correct", "incorrect", "empty", "full", "high", "low", "large",
    "small", "big", "short", "long", "fast", "slow", "quick", "public", "private",
    "local", "remote", "external", "internal", "online", "offline", "active",
    "inactive", "specific", "general", "free", "open", "closed", "clear", "ready",
    "due", "safe", "unsafe", "responsible", "authorized", "unauthorized", "required",
    "important", "essential", "mandatory", "optional", "appropriate", "relevant",
    "sufficient", "insufficient", "successful", "unsuccessful", "real", "default",
    "maximum", "minimum", "single", "multiple", "several", "individual", "entire",
    "whole", "critical", "normal", "abnormal", "standard", "physical", "digital",
    "manual", "automatic", "electronic", "unique", "original", "temporary",
    "permanent", "recent", "early", "late", "daily", "annual", "easy", "hard",
    "simple", "certain", "likely", "unlikely", "desirable", "advisable", "obvious",
    "evident", "acceptable", "unacceptable", "expected", "known", "unknown", "own",
    "such", "key", "obsolete", "duplicate", "corrupt", "expired", "legal", "medical", "clinical", "national", "international",
}

ADJ_SUFFIXES = ("able", "ible", "ical", "ful", "less", "ous", "ive", "ish", "ant", "ent", "ic")
# suffixes above produce false positives for these nouns
ADJ_SUFFIX_EXCEPTIONS = {
    "table", "cable", "variable", "label", "bible", "vehicle", "archive", "objective",
    "directive", "executive", "representative", "initiative", "alternative",
    "incentive", "drive", "hive", "dive", "native", "detective", "narrative",
    "agent", "client", "event", "component", "document", "element", "content",
    "department", "student", "patient", "parent", "segment", "comment", "payment",
    "environment", "requirement", "statement", "management", "equipment",
    "assignment", "attachment", "agreement", "amendment", "argument", "deployment",
    "development", "measurement", "movement", "treatment", "shipment", "instrument",
    "moment", "percent", "accent", "incident", "resident", "president", "intent",
    "extent", "consent", "talent", "tenant", "applicant", "participant", "assistant",
    "consultant", "merchant", "servant", "variant", "constant", "accountant",
    "restaurant", "plant", "grant", "warrant", "logic", "topic", "traffic", "music",
    "clinic", "public", "graphic", "mechanic", "fabric", "metric", "rubric", "basic",
    "republic", "panic", "ethic", "tunic", "mosaic", "arithmetic", "epic", "tonic",
}

NOUN_SUFFIXES = (
    "tion", "sion", "ment", "ness", "ity", "ance", "ence", "ism", "ship", "hood",
    "age", "ure", "er", "or", "ist", "ery", "ory", "dom", "ing",
)

ANIMATE_NOUNS = {
    "user", "operator", "administrator", "admin", "person", "people", "customer",
    "client", "patient", "doctor", "nurse", "physician", "driver", "pilot",
    "engineer", "developer", "manager", "employee", "staff", "student", "teacher",
    "member", "owner", "author", "reviewer", "applicant", "officer", "clerk",
    "agent", "actor", "citizen", "passenger", "visitor", "guest", "subscriber",
    "supervisor", "technician", "controller", "analyst", "auditor", "inspector",
    "maintainer", "caller", "buyer", "seller", "vendor", "supplier", "child",
    "man", "woman", "boy", "girl", "mother", "father", "stakeholder", "tester",
    "approver", "requester", "recipient", "sender", "player", "team", "crew",
    "committee", "participant", "dispatcher", "consultant", "assistant",
}
MASCULINE_NOUNS = {"man", "boy", "father", "husband", "son", "brother", "king", "mr"}
FEMININE_NOUNS = {"woman", "girl", "mother", "wife", "daughter", "sister", "queen", "mrs", "ms"}

COLLECTIVE_NOUNS = {
    "group", "set", "team", "collection", "list", "batch", "array", "series",
    "family", "crew", "committee", "staff", "board", "population", "fleet",
    "library", "catalog", "catalogue", "queue", "pool", "cluster", "bundle",
    "package", "suite", "inventory", "database", "repository", "archive",
    "network", "organization", "department", "audience", "panel", "stack",
}

ABSTRACT_NOUNS = {
    "access", "security", "safety", "privacy", "quality", "performance",
    "availability", "reliability", "usability", "obliteration", "deletion",
    "integrity", "confidentiality", "time", "information", "knowledge", "support",
    "control", "protection", "permission", "authority", "responsibility",
    "priority", "policy", "process", "procedure", "method", "approach", "purpose",
    "reason", "goal", "objective", "requirement", "function", "functionality",
    "behavior", "behaviour", "status", "state", "mode", "condition", "event",
    "error", "failure", "fault", "risk", "issue", "problem", "change", "use",
}
ABSTRACT_SUFFIXES = ("tion", "sion", "ment", "ness", "ity", "ance", "ence", "ism", "ship", "hood", "dom")

# pronoun followers that mark a non-referential "it"
PLEONASTIC_ADJECTIVES = (
    "required", "necessary", "possible", "impossible", "important", "essential",
    "mandatory", "recommended", "likely", "unlikely", "desirable", "advisable",
    "expected", "assumed", "known", "clear", "evident", "obvious", "noted",
    "understood", "acceptable", "sufficient", "crucial", "critical", "vital",
    "preferable", "permissible", "forbidden", "prohibited", "true", "false",
    "believed", "agreed", "anticipated", "intended", "planned", "proposed",
    "suggested", "well known",
)
WEATHER_VERBS = ("rains", "rained", "raining", "snows", "snowed", "snowing", "hails", "freezes", "thunders")

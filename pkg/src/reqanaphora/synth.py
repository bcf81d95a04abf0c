"""Seeded generator of template requirements with known pronoun usage."""

from __future__ import annotations

import random

AGENTS = ["system", "server", "controller", "application", "gateway", "scheduler", "module", "service"]
PEOPLE = ["operator", "administrator", "user", "clerk", "auditor", "engineer", "reviewer", "manager"]
OBJECTS = [
    ("record", "records"), ("file", "files"), ("report", "reports"), ("message", "messages"),
    ("folder", "folders"), ("alarm", "alarms"), ("request", "requests"), ("document", "documents"),
    ("backup", "backups"), ("certificate", "certificates"), ("session", "sessions"), ("account", "accounts"),
]
ADJS = ["invalid", "corrupted", "expired", "incomplete", "obsolete", "duplicate"]
# base -> (3rd person singular, past participle)
VERBS = {
    "archive": ("archives", "archived"), "store": ("stores", "stored"), "delete": ("deletes", "deleted"),
    "encrypt": ("encrypts", "encrypted"), "validate": ("validates", "validated"),
    "export": ("exports", "exported"), "display": ("displays", "displayed"),
    "update": ("updates", "updated"), "lock": ("locks", "locked"), "retain": ("retains", "retained"),
    "send": ("sends", "sent"), "verify": ("verifies", "verified"), "monitor": ("monitors", "monitored"),
    "transmit": ("transmits", "transmitted"), "protect": ("protects", "protected"),
}

TEMPLATES = [
    "The {agent} shall {v1} the {opl} and {v2} them.",
    "The {agent} shall {v1} the {osg} before it is {v2n}.",
    "When the {agent} receives a {osg}, it shall {v1} the {opl2}.",
    "The {agent} shall {v1} all {opl} for the {person}.",
    "The {person} shall {v1} their {opl}.",
    "Authorized {persons} shall be able to {v1} the {opl} of the {osg2} and {v2} its {opl2}.",
    "It shall be possible to {v1} the {opl}.",
    "The {opl} shall be {v1n} by the {agent} and they shall be {v2n} daily.",
    "If the {osg} is {adj}, the {agent} shall {v1} it.",
    "The {agent} shall {v1} the {opl} of the {person}.",
    "The {person} shall {v1} the {osg} and the {agent} shall {v2} it.",
    "The {agent} shall {v1} {osg_a} {osg} to the {person} and {v2} its {opl2}.",
]


def _fill(rng: random.Random, template: str) -> str:
    v1, v2 = rng.sample(sorted(VERBS), 2)
    (osg, opl), (osg2, opl2) = rng.sample(OBJECTS, 2)
    person = rng.choice(PEOPLE)
    return template.format(
        agent=rng.choice(AGENTS),
        person=person,
        persons=person + "s",
        osg=osg,
        opl=opl,
        osg2=osg2,
        opl2=opl2,
        osg_a="an" if osg[0] in "aeiou" else "a",
        adj=rng.choice(ADJS),
        v1=v1,
        v2=v2,
        v1n=VERBS[v1][1],
        v2n=VERBS[v2][1],
    )


def generate_requirements(n: int, seed: int = 0) -> list[str]:
    rng = random.Random(seed)
    return [_fill(rng, rng.choice(TEMPLATES)) for _ in range(n)]


def generate_spec(n: int, seed: int = 0, labeled: bool = True) -> str:
    lines = generate_requirements(n, seed)
    if labeled:
        lines = [f"R{i + 1}: {ln}" for i, ln in enumerate(lines)]
    return "\n".join(lines) + "\n"


# two requirements whose "them" has six plausible antecedents
WORKED_EXAMPLE_SPEC = (
    "R1: The system shall restrict access to records, parts, folders and groups of folders "
    "to prevent obliteration.\n"
    "R2: Only authorized users shall be able to archive write-once folders and delete them.\n"
)

ACCEPTANCE_CORPUS_SEED = 2022
ACCEPTANCE_CORPUS_SIZE = 100

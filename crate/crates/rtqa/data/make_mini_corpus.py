"""Regenerates mini_corpus.jsonl and gazetteer.json (deterministic)."""
import json
import os

HERE = os.path.dirname(os.path.abspath(__file__))

PEOPLE = {
    "Alan Turing": dict(nat="British", he="He", born=("London", 1912), died=("Wilmslow", 1954),
        studied=[("University of Cambridge", 1931), ("Princeton University", 1936)],
        worked=[("Bletchley Park", 1939), ("University of Manchester", 1948)],
        wrote=[("Computing Machinery and Intelligence", 1950)], award=[], knew=["John von Neumann"]),
    "Ada Lovelace": dict(nat="British", he="She", born=("London", 1815), died=("London", 1852),
        studied=[], worked=[], wrote=[("Notes on the Analytical Engine", 1843)], award=[],
        knew=["Charles Babbage"]),
    "Charles Babbage": dict(nat="British", he="He", born=("London", 1791), died=("London", 1871),
        studied=[("University of Cambridge", 1810)], worked=[("University of Cambridge", 1828)],
        wrote=[("Passages from the Life of a Philosopher", 1864)], award=[], knew=["Ada Lovelace"]),
    "Marie Curie": dict(nat="Polish", he="She", born=("Warsaw", 1867), died=("Passy", 1934),
        studied=[("University of Paris", 1891)], worked=[("University of Paris", 1906)],
        wrote=[("Treatise on Radioactivity", 1910)],
        award=[("Nobel Prize in Physics", 1903), ("Nobel Prize in Chemistry", 1911)], knew=["Pierre Curie"]),
    "Pierre Curie": dict(nat="French", he="He", born=("Paris", 1859), died=("Paris", 1906),
        studied=[("University of Paris", 1877)], worked=[("University of Paris", 1900)], wrote=[],
        award=[("Nobel Prize in Physics", 1903)], knew=["Marie Curie"]),
    "Albert Einstein": dict(nat="German", he="He", born=("Ulm", 1879), died=("Princeton", 1955),
        studied=[("ETH Zurich", 1896)], worked=[("Swiss Patent Office", 1902), ("Institute for Advanced Study", 1933)],
        wrote=[("On the Electrodynamics of Moving Bodies", 1905)], award=[("Nobel Prize in Physics", 1921)],
        knew=["John von Neumann", "Niels Bohr"]),
    "Niels Bohr": dict(nat="Danish", he="He", born=("Copenhagen", 1885), died=("Copenhagen", 1962),
        studied=[("University of Copenhagen", 1903)], worked=[("University of Manchester", 1912), ("University of Copenhagen", 1916)],
        wrote=[("On the Constitution of Atoms and Molecules", 1913)], award=[("Nobel Prize in Physics", 1922)],
        knew=["Ernest Rutherford", "Albert Einstein"]),
    "Ernest Rutherford": dict(nat="British", he="He", born=("Brightwater", 1871), died=("Cambridge", 1937),
        studied=[("University of Cambridge", 1895)], worked=[("University of Manchester", 1907), ("Cavendish Laboratory", 1919)],
        wrote=[("Radio-activity", 1904)], award=[("Nobel Prize in Chemistry", 1908)], knew=["Niels Bohr"]),
    "Isaac Newton": dict(nat="English", he="He", born=("Woolsthorpe", 1643), died=("London", 1727),
        studied=[("University of Cambridge", 1661)], worked=[("Royal Society", 1703)],
        wrote=[("Principia", 1687), ("Opticks", 1704)], award=[], knew=[]),
    "Charles Darwin": dict(nat="English", he="He", born=("Shrewsbury", 1809), died=("Downe", 1882),
        studied=[("University of Edinburgh", 1825), ("University of Cambridge", 1828)], worked=[("Royal Society", 1839)],
        wrote=[("On the Origin of Species", 1859), ("The Descent of Man", 1871)], award=[], knew=[]),
    "Rosalind Franklin": dict(nat="British", he="She", born=("London", 1920), died=("London", 1958),
        studied=[("University of Cambridge", 1938)], worked=[("King's College London", 1951)],
        wrote=[("Photo 51", 1952)], award=[], knew=[]),
    "Grace Hopper": dict(nat="American", he="She", born=("New York City", 1906), died=("Arlington", 1992),
        studied=[("Yale University", 1930)], worked=[("Harvard University", 1944)],
        wrote=[("COBOL", 1959)], award=[], knew=[]),
    "Nikola Tesla": dict(nat="Serbian", he="He", born=("Smiljan", 1856), died=("New York City", 1943),
        studied=[("Graz University of Technology", 1875)], worked=[("Edison Machine Works", 1884)],
        wrote=[("My Inventions", 1919)], award=[], knew=[]),
    "John von Neumann": dict(nat="Hungarian", he="He", born=("Budapest", 1903), died=("Washington", 1957),
        studied=[("ETH Zurich", 1926)], worked=[("Institute for Advanced Study", 1933), ("Princeton University", 1930)],
        wrote=[("Theory of Games and Economic Behavior", 1944)], award=[], knew=["Alan Turing", "Albert Einstein"]),
    "Lise Meitner": dict(nat="Austrian", he="She", born=("Vienna", 1878), died=("Cambridge", 1968),
        studied=[("University of Vienna", 1901)], worked=[("Kaiser Wilhelm Institute", 1912)],
        wrote=[], award=[], knew=["Otto Hahn"]),
    "Otto Hahn": dict(nat="German", he="He", born=("Frankfurt", 1879), died=("Berlin", 1968),
        studied=[("University of Marburg", 1897)], worked=[("Kaiser Wilhelm Institute", 1912)],
        wrote=[], award=[("Nobel Prize in Chemistry", 1944)], knew=["Lise Meitner", "Ernest Rutherford"]),
    "Erwin Schrodinger": dict(nat="Austrian", he="He", born=("Vienna", 1887), died=("Vienna", 1961),
        studied=[("University of Vienna", 1906)], worked=[("University of Zurich", 1921), ("Dublin Institute for Advanced Studies", 1939)],
        wrote=[("What Is Life", 1944)], award=[("Nobel Prize in Physics", 1933)], knew=[]),
    "Paul Dirac": dict(nat="British", he="He", born=("Bristol", 1902), died=("Tallahassee", 1984),
        studied=[("University of Cambridge", 1923)], worked=[("University of Cambridge", 1932), ("Institute for Advanced Study", 1934)],
        wrote=[("The Principles of Quantum Mechanics", 1930)], award=[("Nobel Prize in Physics", 1933)],
        knew=["Erwin Schrodinger", "Niels Bohr"]),
    "Max Planck": dict(nat="German", he="He", born=("Kiel", 1858), died=("Gottingen", 1947),
        studied=[("University of Munich", 1874)], worked=[("Kaiser Wilhelm Institute", 1930)],
        wrote=[("Treatise on Thermodynamics", 1897)], award=[("Nobel Prize in Physics", 1918)],
        knew=["Albert Einstein", "Lise Meitner"]),
    "Dorothy Hodgkin": dict(nat="British", he="She", born=("Cairo", 1910), died=("Shipston-on-Stour", 1994),
        studied=[("University of Cambridge", 1932)], worked=[("Royal Society", 1947)],
        wrote=[], award=[("Nobel Prize in Chemistry", 1964)], knew=["Rosalind Franklin"]),
    "Emmy Noether": dict(nat="German", he="She", born=("Erlangen", 1882), died=("Bryn Mawr", 1935),
        studied=[("University of Erlangen", 1900)], worked=[("University of Gottingen", 1915), ("Institute for Advanced Study", 1934)],
        wrote=[("Ideal Theory in Rings", 1921)], award=[], knew=["Albert Einstein"]),
    "Srinivasa Ramanujan": dict(nat="Indian", he="He", born=("Erode", 1887), died=("Kumbakonam", 1920),
        studied=[("University of Cambridge", 1914)], worked=[("Royal Society", 1918)],
        wrote=[], award=[], knew=["Paul Dirac"]),
}

ORGS = {
    "University of Cambridge": dict(city="Cambridge", founded=1209, kind="university"),
    "Princeton University": dict(city="Princeton", founded=1746, kind="university"),
    "University of Manchester": dict(city="Manchester", founded=1824, kind="university"),
    "Bletchley Park": dict(city="Milton Keynes", founded=1938, kind="codebreaking centre"),
    "University of Paris": dict(city="Paris", founded=1150, kind="university"),
    "ETH Zurich": dict(city="Zurich", founded=1855, kind="technical university"),
    "Institute for Advanced Study": dict(city="Princeton", founded=1930, kind="research institute"),
    "University of Copenhagen": dict(city="Copenhagen", founded=1479, kind="university"),
    "Royal Society": dict(city="London", founded=1660, kind="learned society"),
    "University of Vienna": dict(city="Vienna", founded=1365, kind="university"),
    "Kaiser Wilhelm Institute": dict(city="Berlin", founded=1911, kind="research institute"),
    "Cavendish Laboratory": dict(city="Cambridge", founded=1874, kind="laboratory"),
    "King's College London": dict(city="London", founded=1829, kind="college"),
    "Harvard University": dict(city="Cambridge", founded=1636, kind="university"),
    "Yale University": dict(city="New Haven", founded=1701, kind="university"),
    "University of Edinburgh": dict(city="Edinburgh", founded=1583, kind="university"),
    "Swiss Patent Office": dict(city="Bern", founded=1888, kind="government office"),
    "University of Zurich": dict(city="Zurich", founded=1833, kind="university"),
    "Graz University of Technology": dict(city="Graz", founded=1811, kind="technical university"),
    "Edison Machine Works": dict(city="New York City", founded=1881, kind="factory"),
    "Dublin Institute for Advanced Studies": dict(city="Dublin", founded=1940, kind="research institute"),
    "University of Marburg": dict(city="Marburg", founded=1527, kind="university"),
    "University of Munich": dict(city="Munich", founded=1472, kind="university"),
    "University of Erlangen": dict(city="Erlangen", founded=1743, kind="university"),
    "University of Gottingen": dict(city="Gottingen", founded=1734, kind="university"),
}

CITIES = {
    "London": dict(country="United Kingdom", river="River Thames", pop="8,800,000", capital=True),
    "Cambridge": dict(country="United Kingdom", river="River Cam", pop="145,000", capital=False),
    "Paris": dict(country="France", river="Seine", pop="2,100,000", capital=True),
    "Vienna": dict(country="Austria", river="Danube", pop="1,900,000", capital=True),
    "Copenhagen": dict(country="Denmark", river="Oresund", pop="650,000", capital=True),
    "Manchester": dict(country="United Kingdom", river="River Irwell", pop="550,000", capital=False),
    "Princeton": dict(country="United States", river="Millstone River", pop="30,000", capital=False),
    "Zurich": dict(country="Switzerland", river="Limmat", pop="420,000", capital=False),
    "Warsaw": dict(country="Poland", river="Vistula", pop="1,800,000", capital=True),
    "Berlin": dict(country="Germany", river="Spree", pop="3,600,000", capital=True),
    "New York City": dict(country="United States", river="Hudson River", pop="8,300,000", capital=False),
}

AWARDS = ["Nobel Prize in Physics", "Nobel Prize in Chemistry"]

BARE = {"Bletchley Park", "Princeton University", "ETH Zurich", "King's College London", "Harvard University",
        "Yale University", "Graz University of Technology", "Edison Machine Works"}


def the(org):
    return org if org in BARE else "the " + org


def The(org):
    return org if org in BARE else "The " + org

BORN = [
    "{p} was born in {c} in {y}.",
    "In {y}, {p} was born in the city of {c}.",
    "{c} was the birthplace of {p}, who was born there in {y}.",
    "The {n} scientist {p} came into the world in {c} in {y}.",
]
DIED = [
    "{p} died in {c} in {y}.",
    "In {y}, {p} passed away in {c}.",
    "{p} spent the final years in {c} and died there in {y}.",
]
STUDIED = [
    "{p} studied at {to} from {y}.",
    "In {y}, {p} enrolled at {to}.",
    "{To} admitted {p} as a student in {y}.",
    "{p} began studies at {to} in {y}, a period that shaped later work.",
]
WORKED = [
    "{p} joined {to} in {y}.",
    "From {y}, {p} worked at {to}.",
    "In {y} {to} appointed {p} to a position.",
    "{p} took up a post at {to} in {y} and stayed for several years.",
]
WROTE = [
    "{p} published {w} in {y}.",
    "In {y}, {p} completed {w}.",
    "{w} was written by {p} and appeared in {y}.",
]
AWARD = [
    "{p} received the {a} in {y}.",
    "In {y}, {p} was awarded the {a}.",
    "The {a} went to {p} in {y}.",
]
KNEW = [
    "{p} corresponded with {q} for many years.",
    "{p} met {q} and the two discussed their research.",
    "{q} was a colleague and friend of {p}.",
]
FILLER = [
    "The work attracted wide attention.",
    "Historians still debate the details of this period.",
    "Several letters from these years survive.",
    "Contemporary accounts describe a demanding schedule.",
    "Much of this material was published only later.",
]
LEGACY = [
    "The legacy of {p} remains the subject of many books.",
    "Later biographers of {p} revisited these events in detail.",
    "Museums have since collected papers left by {p}.",
]
ORG_FACTS = [
    "{To} was founded in {y}.",
    "{To} is located in {c}.",
    "Established in {y}, {to} is a {k} based in {c}.",
    "{To} in {c} is a {k} with a long history.",
]
CITY_FACTS = [
    "{c} is a city in {k}.",
    "The {r} flows through {c}.",
    "{c} has a population of about {n} people.",
    "{c} is the capital of {k}.",
]


def pick(templates, key):
    return templates[sum(map(ord, key)) % len(templates)]


def person_facts(name):
    d = PEOPLE[name]
    facts = []
    c, y = d["born"]
    facts.append((BORN, dict(p=name, c=c, y=y, n=d["nat"]), {name, c}))
    for o, y in d["studied"]:
        facts.append((STUDIED, dict(p=name, o=o, y=y), {name, o, ORGS[o]["city"]}))
    for o, y in d["worked"]:
        facts.append((WORKED, dict(p=name, o=o, y=y), {name, o, ORGS[o]["city"]}))
    for w, y in d["wrote"]:
        facts.append((WROTE, dict(p=name, w=w, y=y), {name}))
    for a, y in d["award"]:
        facts.append((AWARD, dict(p=name, a=a, y=y), {name, a}))
    for q in d["knew"]:
        facts.append((KNEW, dict(p=name, q=q), {name, q}))
    c, y = d["died"]
    facts.append((DIED, dict(p=name, c=c, y=y), {name, c}))
    return facts


def org_facts(org):
    d = ORGS[org]
    return [(ORG_FACTS[i:i + 1], dict(o=org, y=d["founded"], c=d["city"], k=d["kind"]), {org, d["city"]})
            for i in range(len(ORG_FACTS))]


def city_facts(city):
    d = CITIES[city]
    out = [
        (CITY_FACTS[0:1], dict(c=city, k=d["country"]), {city}),
        (CITY_FACTS[1:2], dict(c=city, r=d["river"]), {city}),
        (CITY_FACTS[2:3], dict(c=city, n=d["pop"]), {city}),
    ]
    if d["capital"]:
        out.append((CITY_FACTS[3:4], dict(c=city, k=d["country"]), {city}))
    return out


ALL_FACTS = [f for p in PEOPLE for f in person_facts(p)]


def render(templates, slots, doc_id, shift):
    t = templates[(sum(map(ord, doc_id)) + shift) % len(templates)]
    if "o" in slots:
        slots = dict(slots, to=the(slots["o"]), To=The(slots["o"]))
    return t.format(**slots)


def paragraphs_from(sentences, size):
    return [" ".join(sentences[i:i + size]) for i in range(0, len(sentences), size)]


def person_doc(name, k):
    sents = []
    for i, (tpls, slots, _) in enumerate(person_facts(name)):
        sents.append(render(tpls, slots, "p" + name, i))
        if i % 3 == 2:
            sents.append(FILLER[(k + i) % len(FILLER)])
    d = PEOPLE[name]
    sents.insert(1, f"{d['he']} was {d['nat']} by birth.")
    legacy = [render(t, s, "legacy" + name, i + 1) for i, (t, s, _) in enumerate(person_facts(name)) if i % 2 == 0]
    legacy.insert(1, LEGACY[k % len(LEGACY)].format(p=name))
    return paragraphs_from(sents, 4) + paragraphs_from(legacy, 4)


def place_doc(city, k):
    sents = [render(t, s, "c" + city, i) for i, (t, s, _) in enumerate(city_facts(city))]
    for o, od in ORGS.items():
        if od["city"] == city:
            sents.append(render(ORG_FACTS, dict(o=o, y=od["founded"], c=city, k=od["kind"]), "c" + city, len(sents)))
    for i, (tpls, slots, ents) in enumerate(ALL_FACTS):
        if city in ents and tpls in (BORN, DIED, STUDIED, WORKED):
            sents.append(render(tpls, slots, "c" + city, i + 1))
    return paragraphs_from(sents, 5)


def org_doc(org, k):
    sents = [render(t, s, "o" + org, i) for i, (t, s, _) in enumerate(org_facts(org))]
    for i, (tpls, slots, ents) in enumerate(ALL_FACTS):
        if org in ents:
            sents.append(render(tpls, slots, "o" + org, i + 2))
            if len(sents) % 4 == 0:
                sents.append(FILLER[(k + i) % len(FILLER)])
    return paragraphs_from(sents, 4)


def award_doc(award, k):
    sents = [f"The {award} is awarded by the Royal Swedish Academy of Sciences.",
             f"The first {award} was presented in 1901."]
    for i, (tpls, slots, ents) in enumerate(ALL_FACTS):
        if award in ents:
            sents.append(render(tpls, slots, "a" + award, i + 1))
    return paragraphs_from(sents, 4)


def slug(s):
    return "".join(ch.lower() if ch.isalnum() else "_" for ch in s).strip("_")


def main():
    docs = []
    for k, p in enumerate(PEOPLE):
        docs.append(dict(doc_id="person_" + slug(p), title=p, paragraphs=person_doc(p, k)))
    for k, c in enumerate(CITIES):
        docs.append(dict(doc_id="place_" + slug(c), title=c, paragraphs=place_doc(c, k)))
    for k, o in enumerate(ORGS):
        if sum(o in ents for _, _, ents in ALL_FACTS) >= 2:
            docs.append(dict(doc_id="org_" + slug(o), title=o, paragraphs=org_doc(o, k)))
    for k, a in enumerate(AWARDS):
        docs.append(dict(doc_id="award_" + slug(a), title=a, paragraphs=award_doc(a, k)))

    with open(os.path.join(HERE, "mini_corpus.jsonl"), "w", encoding="utf-8") as f:
        for d in docs:
            f.write(json.dumps(d, ensure_ascii=False) + "\n")

    places = set(CITIES) | {c for c, _ in (d["born"] for d in PEOPLE.values())} \
        | {c for c, _ in (d["died"] for d in PEOPLE.values())} | {o["city"] for o in ORGS.values()}
    countries = {c["country"] for c in CITIES.values()}
    gaz = {
        "PERSON": sorted(PEOPLE),
        "GPE": sorted(places | countries),
        "LOC": sorted({c["river"] for c in CITIES.values()}),
        "ORG": sorted(set(ORGS) | {"Royal Swedish Academy of Sciences"}),
        "NORP": sorted({d["nat"] for d in PEOPLE.values()}),
        "WORK_OF_ART": sorted({w for d in PEOPLE.values() for w, _ in d["wrote"]} | set(AWARDS)),
    }
    with open(os.path.join(HERE, "gazetteer.json"), "w", encoding="utf-8") as f:
        json.dump(gaz, f, indent=2, ensure_ascii=False)
        f.write("\n")
    n = sum(len(p) for d in docs for p in d["paragraphs"])
    print(len(docs), "documents")


if __name__ == "__main__":
    main()

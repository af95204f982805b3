#!/usr/bin/env python3
"""Generate the fixture corpus: Spanish articles in the restricted HTML subset.

Deterministic for a given seed.  A handful of articles are handwritten with
deliberately messy (but legal) formatting; the rest are assembled from word
pools.  Run from anywhere; paths resolve relative to the repository root.
"""

from __future__ import annotations

import argparse
import random
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent

WORDS = """la ciudad antigua tiene muchos habitantes y el río cruza los barrios
del centro con puentes de piedra que la gente visita cada año porque son muy
famosos la catedral está cerca del mercado viejo y una torre alta domina la
plaza mayor donde viven artistas el museo guarda obras importantes también hay
un parque grande con agua y madera hoy la muralla rodea el casco histórico
pero el palacio nuevo queda lejos hacia el norte siempre llegan visitantes
desde el sur aquí la biblioteca conserva mapas y el teatro ofrece ópera""".split()

LINKABLE = ["Berlín", "Alemania", "Madrid", "Barcelona", "Cataluña", "España",
            "Portugal", "Francia", "París", "Valencia", "Roma", "Lisboa",
            "Oporto", "Esprea", "Río", "Lago", "Bosque", "Ciudad", "País",
            "Montaña", "Valle", "Océano", "Mar", "Isla", "Puente", "Palacio",
            "Museo", "Catedral", "Torre", "Plaza", "Avenida", "Edificio",
            "Mercado", "Aeropuerto", "Castillo", "Casa", "Monumento",
            "Parque", "Muralla", "Barrio", "Biblioteca", "Teatro", "Ópera",
            "Glaciar", "Budapest", "Península ibérica", "Estación central"]

UNKNOWN = ["Atlántida", "Ciudad perdida", "Islas remotas", "Camino real"]

CATEGORIES = ["Categoría:Capitales", "Categoría:Ciudades de Alemania",
              "Categoría:Monumentos", "Categoría:Ríos de Europa"]

TITLE_HEADS = ["Historia de", "Geografía de", "Cultura de", "Puentes de",
               "Museos de", "Plazas de", "Mercados de", "Castillos de",
               "Parques de", "Teatros de"]
TITLE_TAILS = ["Arlberg", "Covadonga", "Miranda", "Sort", "Frías", "Alarcón",
               "Olite", "Cudillero", "Albarracín", "Laguardia", "Ronda",
               "Besalú", "Trujillo", "Pedraza", "Morella", "Bárcena",
               "Zuheros", "Capileira", "Mojácar", "Frigiliana"]

ABBREV_BITS = ["p. ej.", "el Dr. Llull", "la Sra. Prat", "etc.", "el núm. 7",
               "la pág. 12"]

EXOTIC = ["𝄞", "🌍", "café", "über"]


def sentence(rng: random.Random) -> list[str]:
    n = rng.randint(4, 9)
    words = [rng.choice(WORDS) for _ in range(n)]
    if rng.random() < 0.18:
        words.insert(rng.randrange(len(words)), rng.choice(ABBREV_BITS))
    if rng.random() < 0.12:
        words.insert(rng.randrange(len(words)), f"{rng.randint(1, 9)}.{rng.randint(100, 999)}")
    if rng.random() < 0.08:
        words.append(rng.choice(EXOTIC))
    words[0] = words[0][0].upper() + words[0][1:]
    ending = rng.choice([".", ".", ".", ".", "!", "?", "…"])
    words[-1] = words[-1] + ending
    return words


def link_for(rng: random.Random, text: str) -> str:
    if rng.random() < 0.75:
        title = rng.choice(LINKABLE)
        cls = ""
    else:
        title = rng.choice(UNKNOWN)
        cls = ' class="new"' if rng.random() < 0.5 else ""
    href = "./" + title.replace(" ", "_")
    return f'<a href="{href}"{cls}>{text}</a>'


def decorate(rng: random.Random, words: list[str]) -> str:
    """Wrap up to a few word runs of one sentence in inline markup."""
    out = list(words)
    used: set[int] = set()
    for _ in range(rng.randint(0, 2)):
        width = rng.randint(1, min(3, len(out)))
        start = rng.randrange(0, len(out) - width + 1)
        span = range(start, start + width)
        if used.intersection(span):
            continue
        used.update(span)
        text = " ".join(out[start:start + width])
        roll = rng.random()
        if roll < 0.35:
            piece = link_for(rng, text)
        elif roll < 0.55:
            piece = f"<b>{text}</b>"
        elif roll < 0.75:
            piece = f"<i>{text}</i>"
        elif roll < 0.85:
            piece = f"<b><i>{text}</i></b>"
        elif roll < 0.95:
            piece = f"{text}<ref>{rng.choice(TITLE_TAILS)}</ref>"
        else:
            piece = f'{text}<img src="mapa.png"/>'
        out[start:start + width] = [piece] + [""] * (width - 1)
    return " ".join(w for w in out if w)


def paragraph(rng: random.Random) -> str:
    sentences = [decorate(rng, sentence(rng)) for _ in range(rng.randint(1, 4))]
    return "<p>" + " ".join(sentences) + "</p>"


def heading(rng: random.Random) -> str:
    level = rng.choice([2, 2, 3])
    text = " ".join(sentence(rng)[:3]).rstrip(".!?…")
    return f"<h{level}>{text}</h{level}>"


def list_item(rng: random.Random) -> str:
    return "<li>" + decorate(rng, sentence(rng)) + "</li>"


def article(rng: random.Random) -> str:
    blocks = [paragraph(rng)]
    for _ in range(rng.randint(1, 5)):
        roll = rng.random()
        if roll < 0.2:
            blocks.append(heading(rng))
        elif roll < 0.35:
            blocks.append(list_item(rng))
        else:
            blocks.append(paragraph(rng))
    for cat in rng.sample(CATEGORIES, rng.randint(0, 2)):
        href = "./" + cat.replace(" ", "_")
        blocks.append(f'<link rel="category" href="{href}"/>')
    return "\n".join(blocks) + "\n"


HANDWRITTEN = {
    ("es", "Berlín"): """\
<p><b>Berlín</b> es la capital de <a href="./Alemania">Alemania</a>. Tiene 3.472.000 habitantes aprox. y es la ciudad más poblada del país.</p>
<h2>Historia</h2>
<p>La ciudad fue fundada, p. ej. según crónicas, en el siglo XIII.<ref>Crónica de Colonia</ref> Su museo<ref name="isla"/> más antiguo está en una isla del río <a href="./Esprea">Esprea</a>.</p>
<p>Hoy <i>Berlín</i> es un centro cultural de <a href="./Europa" class="new">Europa</a>: teatros, <a href="./Museo">museos</a>, la <b><i>ópera</i></b> y la vida del barrio.</p>
<li>El oso es el símbolo de la ciudad.</li>
<link rel="category" href="./Categoría:Capitales"/>
<link rel="category" href="./Categoría:Ciudades_de_Alemania"/>
""",
    ("es", "Madrid"): """\


<!-- comentario inicial que no pertenece a ningún bloque -->
<p   id='ignorado'  >Madrid es la capital de <a href='./España'>España</a> y su ciudad más grande.</p>

<h2>Geografía</h2><p>Está en el centro de la <a href="./Península_ibérica">península</a>, a unos 667 m de altitud.<!-- nota --> El clima es seco.</p>
<li>Plaza Mayor</li>
<li>El <strong>Palacio</strong> Real, véase <a href="./Palacio">Palacio</a>.</li>
<link rel="category" href="./Categoría:Capitales" />
""",
    ("es", "Lisboa"): """\
<p><b>Lisboa</b> es la capital de <a href="./Portugal">Portugal</a>. Nadie ignora que el Dr. Pessoa caminó sus calles. La ciudad mira al mar…</p>
<p>Su puente rojo<ref>Puente 25 de Abril</ref> cruza el río y une dos orillas. ¡El tranvía 28 sube la colina!</p>
<h3>Miradores</h3>
<p>Desde el castillo se ve el barrio viejo y el <a href="./Mar">mar</a>. 🌍</p>
<link rel="category" href="./Categoría:Capitales"/>
""",
    ("es", "Caja rara"): """\
<p>Un bloque con <unknown data-x="1">elemento desconocido <b>anidado</b></unknown> dentro.</p>
<p>Texto suelto tras un separador.<hr/>Y otra frase aquí. Fin.</p>
<h1>Título de nivel uno</h1>
<p>Entidades: &amp; &lt; &gt; y comillas &quot; en el texto. Núm. 3.500 no corta.</p>
""",
    ("en", "Berlin"): """\
<p><b>Berlin</b> is the capital of <a href="./Germany">Germany</a>. It has about 3.472.000 inhabitants.</p>
<p>Dr. Smith wrote about its museums, e.g. the old gallery on the island.</p>
<link rel="category" href="./Category:Capitals"/>
""",
}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=20260819)
    parser.add_argument("--count", type=int, default=46,
                        help="generated articles in addition to the handwritten ones")
    parser.add_argument("--out", type=Path, default=ROOT / "fixtures" / "corpus")
    args = parser.parse_args()

    rng = random.Random(args.seed)
    for (lang, title), markup in HANDWRITTEN.items():
        path = args.out / lang / (title.replace(" ", "_") + ".html")
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(markup, encoding="utf-8")

    titles = [f"{head} {tail}"
              for head in TITLE_HEADS for tail in TITLE_TAILS]
    rng.shuffle(titles)
    for title in titles[:args.count]:
        path = args.out / "es" / (title.replace(" ", "_") + ".html")
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(article(rng), encoding="utf-8")

    total = sum(1 for _ in args.out.glob("*/*.html"))
    print(f"{args.out}: {total} articles")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

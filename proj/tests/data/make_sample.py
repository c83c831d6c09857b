#!/usr/bin/env python3
"""Regenerates the bundled 1000-record sample corpus (sample_1000.ndjson).

The file is committed; rerun this only when the fixture needs to change.
Every record parses cleanly, so a scan reports total = 1000.
"""
import gzip
import json
import random

random.seed(20170301)

RIO = (-23.08, -43.80, -22.74, -43.10)
SP = (-23.80, -46.83, -23.39, -46.36)
BRAZIL = (-33.75, -73.99, 5.27, -34.79)

TOPIC_WORDS = [
    ["amigo", "amiga", "saudade", "coracao", "namorado", "beijo", "amor",
     "gente", "juntos", "carinho"],
    ["jogo", "time", "gol", "campeonato", "futebol", "torcida", "partida",
     "vitoria", "flamengo", "estadio"],
    ["igreja", "deus", "culto", "oracao", "domingo", "benção", "gratidao",
     "louvor", "pastor", "versiculo"],
    ["show", "festa", "balada", "musica", "banda", "palco", "ingresso",
     "noite", "dancar", "cerveja"],
    ["aula", "prova", "faculdade", "professor", "estudar", "trabalho",
     "nota", "semestre", "biblioteca", "caderno"],
]
FILLER = ["hoje", "dia", "agora", "muito", "bom", "coisa", "vida", "tempo",
          "casa", "tudo", "nada", "melhor", "sempre", "quero", "vou"]
MONTHS = ["Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep",
          "Oct", "Nov", "Dec"]
WDAYS = ["Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun"]


def created_at():
    # Mar 1 2017 (day 0, a Wednesday) .. May 30 2017
    day = random.randrange(0, 90)
    month, dom = (3, 1 + day) if day < 31 else \
        ((4, day - 30) if day < 61 else (5, day - 60))
    hour = random.choices(range(24), weights=[1, 1, 1, 1, 1, 1, 2, 3, 4, 4,
                                              4, 5, 5, 5, 5, 5, 6, 7, 8, 9,
                                              10, 10, 8, 4])[0]
    wday = WDAYS[(2 + day) % 7]  # 2017-03-01 was a Wednesday
    return "%s %s %02d %02d:%02d:%02d +0000 2017" % (
        wday, MONTHS[month - 1], dom, hour, random.randrange(60),
        random.randrange(60))


def point_in(box):
    return [round(random.uniform(box[1], box[3]), 5),
            round(random.uniform(box[0], box[2]), 5)]  # [lon, lat]


def place(box):
    return {"bounding_box": {"coordinates": [[
        [box[1], box[0]], [box[1], box[2]], [box[3], box[2]], [box[3], box[0]]
    ]]}}


def zipf_user(n_users):
    while True:
        r = random.paretovariate(1.2)
        if r < n_users:
            return "u%04d" % int(r)


def text_and_entities(topic):
    words = random.choices(TOPIC_WORDS[topic], k=random.randrange(5, 9))
    words += random.choices(FILLER, k=random.randrange(2, 5))
    random.shuffle(words)
    if random.random() < 0.15:
        w = words[0]
        words[0] = w[:-1] + w[-1] * random.randrange(4, 7)
    if random.random() < 0.1:
        words.append("kkkk")
    entities = {"hashtags": [], "user_mentions": [], "urls": [], "media": []}
    if random.random() < 0.12:
        words.append("#" + random.choice(TOPIC_WORDS[topic]))
        entities["hashtags"].append({"text": words[-1][1:]})
    if random.random() < 0.25:
        words.append("@u%03d" % random.randrange(500))
        entities["user_mentions"].append({"screen_name": words[-1][1:]})
    if random.random() < 0.18:
        words.append("http://t.co/%05d" % random.randrange(99999))
        entities["urls"].append({"url": words[-1]})
        if random.random() < 0.4:
            entities["media"].append({"type": "photo"})
    return " ".join(words), entities


def record(i):
    r = random.random()
    if r < 0.55:
        city, lang = RIO, "pt"
    elif r < 0.80:
        city, lang = SP, "pt"
    elif r < 0.90:
        city, lang = random.choice([RIO, SP]), "en"
    else:
        city, lang = None, "pt"

    topic = random.randrange(5)
    text, entities = text_and_entities(topic)
    rec = {
        "id_str": "85%013d" % i,
        "text": text,
        "created_at": created_at(),
        "lang": lang,
        "user": {"id_str": zipf_user(200)},
        "entities": entities,
        "coordinates": None,
        "place": None,
    }
    if city is None:
        geo = random.random()
        if geo < 0.5:
            rec["place"] = place(BRAZIL)       # overlap-only place
        elif geo < 0.8:
            rec["coordinates"] = {"coordinates": point_in(
                (-10.0, -60.0, -5.0, -50.0))}  # point far outside
        # else: no geo at all
    else:
        if random.random() < 0.8:
            rec["coordinates"] = {"coordinates": point_in(city)}
        else:
            lat0 = random.uniform(city[0], city[2] - 0.02)
            lon0 = random.uniform(city[1], city[3] - 0.02)
            rec["place"] = place((lat0, lon0, lat0 + 0.02, lon0 + 0.02))
    return rec


def main():
    records = [record(i) for i in range(1000)]
    with open("sample_1000.ndjson", "w") as f:
        for rec in records:
            f.write(json.dumps(rec, sort_keys=True) + "\n")
    with gzip.open("sample_head.ndjson.gz", "wb") as f:
        for rec in records[:50]:
            f.write((json.dumps(rec, sort_keys=True) + "\n").encode())


if __name__ == "__main__":
    main()

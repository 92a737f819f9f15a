#!/usr/bin/env python3
# Copyright 2026 The fcgen Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes a deterministic synthetic learner corpus in the shared-task format.

The real feedback-comment corpus is not redistributable, so the tests run
against this stand-in: the same split sizes (4867 train, 169 dev, 214 test),
the same TSV shape with one-based inclusive character spans, comments using
<term> and <<citation>> markup, and a CoNLL-U parse per training line with
spaCy-style relation labels.

Usage: make_synthetic_corpus.py OUTDIR [--seed N]
"""

import argparse
import os
import random
import re

TRAIN_SIZE = 4867
DEV_SIZE = 169
TEST_SIZE = 214
TEST_PAIRS = 10


class Sentence:
    """Tokens with 1-based heads (0 = root) and relation labels."""

    def __init__(self):
        self.forms = []
        self.heads = []
        self.rels = []

    def add(self, form, head, rel):
        self.forms.append(form)
        self.heads.append(head)
        self.rels.append(rel)
        return len(self.forms)  # 1-based id

    def attach(self, idx, head):
        self.heads[idx - 1] = head

    def text(self):
        return " ".join(self.forms)

    def char_span(self, start, end):
        """One-based inclusive character span of tokens [start, end)."""
        pos = 0
        offsets = []
        for f in self.forms:
            offsets.append((pos, pos + len(f)))
            pos += len(f) + 1
        return offsets[start][0] + 1, offsets[end - 1][1]

    def conllu(self):
        lines = ["# text = " + self.text()]
        for i, (f, h, r) in enumerate(zip(self.forms, self.heads, self.rels), 1):
            lines.append(f"{i}\t{f}\t_\t_\t_\t_\t{h}\t{r}\t_\t_")
        return "\n".join(lines) + "\n"


SUBJECTS = ["They", "We", "Students", "Parents", "People", "Children", "I",
            "You", "Workers", "Teenagers", "Adults", "Friends"]
POSS = ["their", "our", "my", "his", "her", "your"]
KIN = ["father", "mother", "parents", "family", "friends", "brother", "sister",
       "teachers", "neighbors", "classmates", "grandparents", "boss"]
THINGS = ["money", "homework", "food", "rent", "housework", "cooking",
          "shopping", "bills", "study", "work", "problems", "luggage"]
HELP_VERBS = ["help", "assist", "support"]
WRONG_PREPS = ["about", "for", "on", "at", "in", "of"]
MODALS = ["can", "could", "should", "must", "will", "may", "might"]
OPENERS = ["Maybe", "Then", "Sometimes", "Now", "Also", "Today", "Finally"]
VERBS_BASE = ["have", "get", "find", "buy", "take", "make", "choose", "need",
              "start", "keep", "use", "learn"]
OBJECTS = ["job", "car", "book", "house", "bike", "computer", "phone",
           "ticket", "room", "chance", "lesson", "skill"]
ADJS = ["part-time", "new", "good", "cheap", "small", "big", "nice", "better",
        "second", "useful"]
INTRANSITIVE = ["agree", "listen", "wait", "reply", "apologize", "complain",
                "object", "respond", "belong", "participate"]
INTR_PREP = {"agree": "with", "listen": "to", "wait": "for", "reply": "to",
             "apologize": "to", "complain": "about", "object": "to",
             "respond": "to", "belong": "to", "participate": "in"}
TRANSITIVE = ["face", "discuss", "enter", "approach", "marry", "attend",
              "resemble", "reach", "answer", "mention"]
WRONG_TRANS_PREP = ["with", "about", "to", "into", "on"]
DANGERS = ["danger", "problem", "risk", "difficulty", "question", "issue",
           "situation", "challenge"]
BENEFITS = ["advantages", "benefits", "merits", "reasons"]
ADJ_IMPORTANT = ["important", "useful", "necessary", "helpful", "valuable",
                 "essential"]
GROUPS = ["people", "students", "children", "workers", "families", "us"]
TIME_WORDS = ["present", "future", "past", "general", "particular"]
PLACES = ["restaurant", "school", "university", "company", "city", "country",
          "station", "hospital"]


def tail(s, head, rng):
    """Optional trailing material attached to `head`."""
    kind = rng.randrange(7)
    if kind == 0:
        that = s.add("that", 0, "dobj")
        we = s.add("we", 0, "nsubj")
        must = s.add(rng.choice(["must", "should", "can"]), 0, "aux")
        use = s.add("use", head, "relcl")
        for i in (that, we, must):
            s.attach(i, use)
        inn = s.add("in", use, "prep")
        the = s.add("the", 0, "det")
        uni = s.add(rng.choice(PLACES), inn, "pobj")
        s.attach(the, uni)
        s.add("too", use, "advmod")
    elif kind == 1:
        when = s.add("when", 0, "advmod")
        they = s.add("they", 0, "nsubj")
        are = s.add("are", head, "advcl")
        s.attach(when, are)
        s.attach(they, are)
        s.add(rng.choice(["busy", "tired", "old", "sick", "away"]), are, "acomp")
    elif kind == 2:
        every = s.add("every", 0, "det")
        wk = s.add(rng.choice(["weekend", "day", "month", "year", "week"]), head, "npadvmod")
        s.attach(every, wk)
    elif kind == 3:
        after = s.add("after", head, "prep")
        s.add(rng.choice(["school", "work", "class", "dinner"]), after, "pobj")
    elif kind == 4:
        because = s.add("because", 0, "mark")
        it = s.add("it", 0, "nsubj")
        be = s.add("is", head, "advcl")
        s.attach(because, be)
        s.attach(it, be)
        s.add(rng.choice(["necessary", "important", "expensive", "difficult"]), be, "acomp")
    # kinds 5 and 6: nothing


def finish(s, root):
    s.add(".", root, "punct")


# --- families --------------------------------------------------------------
# Each returns (Sentence, span_start, span_end, comment). Spans are token
# indices, end exclusive.

def cap(w):
    return w[:1].upper() + w[1:]


def fam_help_prep(rng):
    s = Sentence()
    subj = s.add(rng.choice(SUBJECTS), 0, "nsubj")
    modal = s.add(rng.choice(MODALS), 0, "aux")
    verb_form = rng.choice(HELP_VERBS)
    verb = s.add(verb_form, 0, "ROOT")
    s.attach(subj, verb)
    s.attach(modal, verb)
    poss = s.add(rng.choice(POSS), 0, "poss")
    kin = s.add(rng.choice(KIN), verb, "dobj")
    s.attach(poss, kin)
    if rng.random() < 0.5:
        s.add("or", kin, "cc")
        s.add(rng.choice(KIN), kin, "conj")
    prep_form = rng.choice(WRONG_PREPS)
    prep = s.add(prep_form, verb, "prep")
    thing = s.add(rng.choice(THINGS), prep, "pobj")
    tail(s, thing, rng)
    finish(s, verb)
    start = prep - 1
    first = rng.choice([
        f"<<{cap(prep_form)}>> is not the appropriate <preposition> to be used when a <noun> follows the structure <{verb_form} + someone>.",
        f"<<{cap(prep_form)}>> is not the right <preposition> after the structure <{verb_form} + someone>.",
        f"The <preposition> <<{prep_form}>> cannot be used with <{verb_form} + someone> when a <noun> follows.",
        f"After <{verb_form} + someone>, a <noun> needs a different <preposition> than <<{prep_form}>>.",
    ])
    second = rng.choice([
        f" Look up the use of the <verb> <<{verb_form}>> in a dictionary to learn the appropriate <preposition> to be used.",
        f" Check the <verb> <<{verb_form}>> in a dictionary.",
        f" Use \"with\" to show what someone gets help in.",
        f" Think about which <preposition> expresses the task.",
        f" The usual choice is \"with\" before the {rng.choice(['task', 'activity', 'thing'])}.",
        "",
    ])
    return s, start, start + 1, first + second


def fam_intransitive(rng):
    s = Sentence()
    subj = s.add(rng.choice(SUBJECTS), 0, "nsubj")
    verb_form = rng.choice(INTRANSITIVE)
    verb = s.add(verb_form, 0, "ROOT")
    s.attach(subj, verb)
    obj = s.add(rng.choice(["it", "them", "him", "her", "this", "that"]), verb, "dobj")
    tail(s, verb, rng)
    finish(s, verb)
    right = INTR_PREP[verb_form]
    first = rng.choice([
        f"<<{cap(verb_form)}>> is an <intransitive verb> and thus it requires a <preposition> before its object.",
        f"The <verb> <<{verb_form}>> is an <intransitive verb>, so a <preposition> is needed before the <object>.",
        f"Since <<{verb_form}>> is an <intransitive verb>, it cannot take a <direct object> without a <preposition>.",
    ])
    second = rng.choice([
        f" Use \"{verb_form} {right}\".",
        f" The <preposition> \"{right}\" is usually used here.",
        " Look it up in a dictionary.",
        "",
        "",
    ])
    return s, verb - 1, obj, first + second


def fam_modal_to(rng):
    s = Sentence()
    root_holder = []
    opener = None
    if rng.random() < 0.6:
        opener = s.add(rng.choice(OPENERS), 0, "advmod")
    subj = s.add(rng.choice(SUBJECTS), 0, "nsubj")
    modal = s.add(rng.choice(MODALS), 0, "aux")
    to = s.add("to", 0, "aux")
    verb = s.add(rng.choice(VERBS_BASE), 0, "ROOT")
    for i in (subj, modal, to):
        s.attach(i, verb)
    if opener:
        s.attach(opener, verb)
    if rng.random() < 0.5:
        adj = s.add(rng.choice(ADJS), 0, "amod")
        obj = s.add(rng.choice(OBJECTS), verb, "dobj")
        s.attach(adj, obj)
    else:
        det = s.add(rng.choice(["a", "the", "some"]), 0, "det")
        obj = s.add(rng.choice(OBJECTS), verb, "dobj")
        s.attach(det, obj)
    tail(s, verb, rng)
    finish(s, verb)
    root_holder.append(verb)
    first = rng.choice([
        "<Verbs> that follow an <auxiliary verb> are used in their <infinitive form> instead of a <to infinitive>.",
        "<Verbs> that come right after an <auxiliary verb> are used in their <infinitive form>.",
        "After an <auxiliary verb> such as <<{m}>>, use the <base form> of the <verb>.",
        "An <auxiliary verb> is followed by a <bare infinitive>, not a <to infinitive>.",
    ]).replace("{m}", s.forms[modal - 1])
    second = rng.choice([
        "",
        " Remove <<to>>.",
        f" Write \"{s.forms[modal - 1]} {s.forms[verb - 1]}\".",
        "",
    ])
    return s, to - 1, to, first + second


def fam_transitive(rng):
    s = Sentence()
    subj = s.add(rng.choice(SUBJECTS), 0, "nsubj")
    modal = s.add(rng.choice(MODALS), 0, "aux")
    verb_form = rng.choice(TRANSITIVE)
    verb = s.add(verb_form, 0, "ROOT")
    s.attach(subj, verb)
    s.attach(modal, verb)
    prep = s.add(rng.choice(WRONG_TRANS_PREP), verb, "prep")
    det = s.add("the", 0, "det")
    noun = s.add(rng.choice(DANGERS), prep, "pobj")
    s.attach(det, noun)
    if rng.random() < 0.5:
        of = s.add("of", noun, "prep")
        s.add(rng.choice(["exploring", "losing", "failing", "moving", "waiting"]), of, "pcomp")
    finish(s, verb)
    first = rng.choice([
        f"Since the <verb> <<{verb_form}>> is a <transitive verb> and its <direct object> indicates the {rng.choice(['confronted', 'intended', 'affected'])} object, it does not require a <preposition>.",
        f"Since the <verb> <<{verb_form}>> is a <transitive verb>, the <object> does not require a <preposition>.",
        f"<<{cap(verb_form)}>> is a <transitive verb>, so no <preposition> is needed before its <direct object>.",
    ])
    second = rng.choice(["", "", f" Delete <<{s.forms[prep - 1]}>>.", " Check a dictionary."])
    return s, prep - 1, prep, first + second


def fam_advantage(rng):
    s = Sentence()
    there = s.add("There", 0, "expl")
    are = s.add("are", 0, "ROOT")
    s.attach(there, are)
    many = s.add(rng.choice(["many", "some", "several", "few"]), 0, "amod")
    ben_form = rng.choice(BENEFITS)
    ben = s.add(ben_form, are, "attr")
    s.attach(many, ben)
    to = s.add("to", 0, "aux")
    verb = s.add(rng.choice(VERBS_BASE), ben, "acl")
    s.attach(to, verb)
    det = s.add("a", 0, "det")
    adj = s.add(rng.choice(ADJS), 0, "amod")
    obj = s.add(rng.choice(OBJECTS), verb, "dobj")
    s.attach(det, obj)
    s.attach(adj, obj)
    finish(s, are)
    lemma = ben_form[:-1]
    first = rng.choice([
        f"Use <preposition + gerund> instead of a <to-infinitive> to describe the \"{lemma}\".",
        f"Use the structure <preposition+gerund> instead of a <to-infinitive> with the <noun> <<{lemma}>>.",
        f"The <noun> <<{ben_form}>> is followed by <preposition + gerund> rather than a <to-infinitive>.",
    ])
    second = rng.choice([
        f" Look up the use of the <noun> <<{lemma}>> in a dictionary.",
        "",
        f" Write \"{ben_form} of {s.forms[verb - 1]}ing\".",
    ])
    return s, to - 1, verb, first + second


def fam_important_of(rng):
    s = Sentence()
    adj_n = s.add(rng.choice(ADJS), 0, "amod")
    subj = s.add("job", 0, "nsubj")
    s.attach(adj_n, subj)
    be = s.add("is", 0, "ROOT")
    s.attach(subj, be)
    a = s.add("a", 0, "det")
    very = s.add("very", 0, "advmod")
    imp_form = rng.choice(ADJ_IMPORTANT)
    imp = s.add(imp_form, be, "acomp")
    s.attach(very, imp)
    s.attach(a, imp)
    of = s.add("of", imp, "prep")
    grp = s.add(rng.choice(GROUPS), of, "pobj")
    inn = s.add("in", be, "prep")
    s.add(rng.choice(TIME_WORDS), inn, "pobj")
    finish(s, be)
    first = rng.choice([
        f"Use the <preposition> 'for' to express \"to be {imp_form} for {s.forms[grp - 1]}\".",
        f"The <adjective> <<{imp_form}>> takes the <preposition> \"for\" before the person affected.",
        f"It is more natural to use the <preposition> for after <<{imp_form}>>.",
    ])
    return s, of - 1, of, first


def fam_most_of(rng):
    s = Sentence()
    most = s.add("most", 0, "amod")
    of = s.add("of", most, "prep")
    place = s.add(rng.choice(PLACES), of, "pobj")
    verb = s.add(rng.choice(["separate", "have", "offer", "keep"]), 0, "ROOT")
    s.attach(most, verb)
    area = s.add(rng.choice(["smoking", "quiet", "open"]), 0, "amod")
    obj = s.add(rng.choice(["areas", "rooms", "seats"]), verb, "dobj")
    s.attach(area, obj)
    finish(s, verb)
    first = rng.choice([
        "Something defined follows <<most of>>.",
        "A group of something specific follows <<most of>>.",
        "<<Most of>> is followed by a specific group.",
    ])
    second = rng.choice([
        f" When referring to {s.forms[place - 1]}s in general, use <<most>> as an <adjective> instead of a <noun>.",
        " Use <<most>> as an <adjective> rather than a <noun> when simply referring to something in general.",
        " Use <<most>> alone for general statements.",
    ])
    return s, most - 1, of, first + second


FREQUENT = [
    "A <countable noun> in the <singular form> requires an <article> such as <<a>> or <<the>>.",
    "The <subject> is in the <third person singular>, so the <verb> needs an <s>.",
    "Use the <past tense> because the event happened before now.",
    "<<Every>> is followed by a <singular noun>.",
    "Use a <plural noun> after <<many>>.",
    "The <preposition> <<in>> is used with months and years.",
    "Use the <gerund> after the <preposition>.",
    "A <comma> is needed before the <conjunction> here.",
    "The <possessive pronoun> must agree with the <subject>.",
    "Use the <present perfect> with <<since>>.",
    "This <adverb> should come before the <main verb>.",
    "An <uncountable noun> does not take the <article> <<a>>.",
    "Use <<much>> with an <uncountable noun>.",
    "The <comparative form> is needed with <<than>>.",
    "A <relative pronoun> is needed to connect the two <clauses>.",
    "Use the <infinitive> after <<want>>.",
]


DETERMINERS = ["many", "every", "a", "much"]

# Phrases that put a cited word into the sentence: (words, relations), the
# first word attaching to the verb and the rest to the first.
CITED_PHRASES = {
    "the": (["at", "the", "station"], ["prep", "det", "pobj"]),
    "in": (["in", "may"], ["prep", "pobj"]),
    "since": (["since", "april"], ["prep", "pobj"]),
    "than": (["more", "than", "before"], ["advmod", "prep", "pobj"]),
}


def fam_frequent(rng, which):
    comment = FREQUENT[which]
    cited = [w.lower() for w in re.findall(r"<<(\w+)>>", comment)]
    s = Sentence()
    subj = s.add(rng.choice(SUBJECTS), 0, "nsubj")
    verbs = ["want"] if "want" in cited else ["want", "like", "buy", "need", "see"]
    verb = s.add(rng.choice(verbs), 0, "ROOT")
    s.attach(subj, verb)
    dets = [w for w in cited if w in DETERMINERS] or DETERMINERS
    det = s.add(rng.choice(dets), 0, "det")
    obj = s.add(rng.choice(OBJECTS), verb, "dobj")
    s.attach(det, obj)
    # Annotators cite words the learner wrote.
    for w in cited:
        if w in s.forms or w not in CITED_PHRASES:
            continue
        words, rels = CITED_PHRASES[w]
        first = s.add(words[0], verb, rels[0])
        if rels[0] == "advmod":
            prep = s.add(words[1], verb, rels[1])
            s.add(words[2], prep, rels[2])
        else:
            for form, rel in zip(words[1:], rels[1:]):
                s.add(form, first if rel != "det" else first + 2, rel)
    tail(s, verb, rng)
    finish(s, verb)
    return s, det - 1, obj, comment


FAMILIES = [fam_help_prep, fam_intransitive, fam_modal_to, fam_transitive,
            fam_advantage, fam_important_of, fam_most_of]


def worked_example():
    s = Sentence()
    forms = ("They can help their father or mother about money that we must "
             "use in the university too .").split()
    heads = [3, 3, 0, 5, 3, 5, 5, 3, 8, 13, 13, 13, 9, 13, 16, 14, 13, 3]
    rels = ["nsubj", "aux", "ROOT", "poss", "dobj", "cc", "conj", "prep",
            "pobj", "dobj", "nsubj", "aux", "relcl", "prep", "det", "pobj",
            "advmod", "punct"]
    for f, h, r in zip(forms, heads, rels):
        s.add(f, h, r)
    comment = ("<<About>> is not the appropriate <preposition> to be used when "
               "a <noun> follows the structure <help + someone>. Look up the use "
               "of the <verb> <<help>> in a dictionary to learn the appropriate "
               "<preposition> to be used.")
    return s, 7, 8, comment


def agree_example():
    s = Sentence()
    for f, h, r in [("I", 2, "nsubj"), ("agree", 0, "ROOT"), ("it", 2, "dobj"),
                    (".", 2, "punct")]:
        s.add(f, h, r)
    comment = ("<<Agree>> is an <intransitive verb> and thus it requires a "
               "<preposition> before its object.")
    return s, 1, 3, comment


def specific_hint(s, start, end, rng):
    """A sentence quoting the learner's own words, as annotators often do."""
    span = " ".join(s.forms[start:end])
    prev = s.forms[start - 1] if start > 0 else None
    nxt = s.forms[end] if end < len(s.forms) and s.forms[end] != "." else None
    options = [f' Here the problem is "{span}".']
    if prev:
        options.append(f' Look at "{prev} {span}" in this sentence.')
        options.append(f' The words "{prev.lower()} {span}" do not fit together.')
    if nxt:
        options.append(f' Reconsider "{span} {nxt}".')
        options.append(f' "{span}" is followed by "{nxt}", which matters here.')
    if prev and nxt:
        options.append(f' Rewrite "{prev} {span} {nxt}".')
    return rng.choice(options)


def line(s, start, end, comment=None):
    a, b = s.char_span(start, end)
    fields = [s.text(), f"{a}:{b}"]
    if comment is not None:
        fields.append(comment)
    return "\t".join(fields)


def make_split(rng, size, n_frequent_groups, frequent_sizes, with_examples):
    items = []
    if with_examples:
        items.append(worked_example())
        items.append(agree_example())
    for g in range(n_frequent_groups):
        for _ in range(frequent_sizes[g]):
            items.append(fam_frequent(rng, g))
    while len(items) < size:
        fam = rng.choice(FAMILIES)
        s, a, b, c = fam(rng)
        if rng.random() < 0.97:
            c += specific_hint(s, a, b, rng)
        items.append((s, a, b, c))
        # Same sentence, second error elsewhere in it.
        if len(items) < size and rng.random() < 0.03:
            s, a, b, _ = items[-1]
            verb = next(i for i, r in enumerate(s.rels) if r == "ROOT")
            if not (a <= verb < b):
                items.append((s, verb, verb + 1,
                              f"Check the <verb> <<{s.forms[verb]}>> and the "
                              f"<tense> it needs in this <sentence> {len(items)}."))
    head = items[:2] if with_examples else []
    rest = items[len(head):]
    rng.shuffle(rest)
    return head + rest


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("outdir")
    ap.add_argument("--seed", type=int, default=2022)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    os.makedirs(args.outdir, exist_ok=True)

    sizes = [rng.randint(10, 13) for _ in FREQUENT]
    train = make_split(rng, TRAIN_SIZE, len(FREQUENT), sizes, True)
    dev = make_split(rng, DEV_SIZE, 0, [], False)

    train_lines = [line(s, a, b, c) for s, a, b, c in train]
    # A few spans that start inside a token, as found in real annotations.
    for k in range(1500, len(train_lines), 1500):
        while len(train[k][0].forms[train[k][1]]) < 3:
            k += 1
        text, span, comment = train_lines[k].split("\t")
        a, b = map(int, span.split(":"))
        train_lines[k] = "\t".join([text, f"{a + 1}:{b}", comment])

    with open(os.path.join(args.outdir, "train.tsv"), "w") as f:
        f.write("\n".join(train_lines) + "\n")
    with open(os.path.join(args.outdir, "train.conllu"), "w") as f:
        f.write("\n".join(s.conllu() for s, _, _, _ in train))
    with open(os.path.join(args.outdir, "dev.tsv"), "w") as f:
        f.write("\n".join(line(s, a, b, c) for s, a, b, c in dev) + "\n")

    # Test: ten sentences appearing twice with different spans, rest single.
    test = []
    used = set()
    while len(test) < 2 * TEST_PAIRS:
        s, a, b, _ = fam_most_of(rng)
        if s.text() in used:
            continue
        used.add(s.text())
        test.append((s, a, b))
        verb = next(i for i, r in enumerate(s.rels) if r == "ROOT")
        test.append((s, verb, verb + 1))
    while len(test) < TEST_SIZE:
        s, a, b, _ = rng.choice(FAMILIES)(rng)
        if s.text() in used:
            continue
        used.add(s.text())
        test.append((s, a, b))
    with open(os.path.join(args.outdir, "test.tsv"), "w") as f:
        f.write("\n".join(line(s, a, b) for s, a, b in test) + "\n")
    # Gold comments for test items are not part of the format; they are kept
    # separately for the repair and evaluation tests.
    with open(os.path.join(args.outdir, "dev.conllu"), "w") as f:
        f.write("\n".join(s.conllu() for s, _, _, _ in dev))


if __name__ == "__main__":
    main()

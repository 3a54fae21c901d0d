#include "textfit/lexicon.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "textfit/errors.hpp"

namespace textfit {

namespace {

// Kept in one place so Lexicon::builtin() and data/function_words.txt cannot
// drift apart silently; a test compares the two.
//
// Adverbial particles (out, up, down, off, away, back) are deliberately
// absent: a purely lexical list cannot separate "ladled out" from "out of
// the door", and counting them as open keeps coefficient derivation
// consistent with function-word totals on the shipped example instance.
constexpr const char* kBuiltinWords = R"(# determiners and quantifiers
the
a
an
this
that
these
those
each
every
either
neither
some
any
no
all
both
few
several
many
much
more
most
other
another
such
own
same
# pronouns
i
you
he
she
it
we
they
me
him
her
us
them
my
your
his
its
our
their
mine
yours
hers
ours
theirs
myself
yourself
himself
herself
itself
ourselves
yourselves
themselves
who
whom
whose
which
what
there
someone
anyone
everyone
nobody
anything
something
everything
nothing
# prepositions
of
in
on
at
by
for
with
from
to
into
onto
upon
about
above
below
under
over
between
among
through
during
before
after
against
across
behind
beyond
beside
besides
within
without
toward
towards
near
since
until
till
via
except
despite
throughout
underneath
amid
along
around
past
per
# conjunctions and complementizers
and
or
but
nor
so
yet
if
because
although
though
while
when
whenever
where
wherever
whereas
unless
once
than
whether
as
# auxiliaries and modals
be
am
is
are
was
were
been
being
have
has
had
having
do
does
did
will
would
shall
should
may
might
must
can
could
ought
not
)";

}  // namespace

std::string to_lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

Lexicon Lexicon::from_text(std::string_view text) {
  Lexicon lex;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    std::string word = line.substr(first, last - first + 1);
    if (word.empty() || word.front() == '#') continue;
    lex.words_.insert(to_lower(word));
  }
  return lex;
}

Lexicon Lexicon::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open lexicon file: " + file.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_text(buffer.str());
}

const Lexicon& Lexicon::builtin() {
  static const Lexicon instance = from_text(kBuiltinWords);
  return instance;
}

bool Lexicon::contains(std::string_view word) const {
  return words_.count(to_lower(word)) > 0;
}

}  // namespace textfit

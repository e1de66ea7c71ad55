#ifndef WIKIDEX_DETAIL_STOPWORDS_DATA_HPP
#define WIKIDEX_DETAIL_STOPWORDS_DATA_HPP

#include <string_view>

namespace wikidex::detail {

// Built-in stopword lists, same format as user-supplied stopword
// files: one entry per line. Unknown languages get an empty list.

inline constexpr std::string_view kEnglishStopwords = R"(a
about
above
after
again
against
all
also
am
an
and
any
are
as
at
be
because
been
before
being
below
between
both
but
by
can
could
did
do
does
doing
down
during
each
few
for
from
further
had
has
have
having
he
her
here
hers
him
his
how
i
if
in
into
is
it
its
itself
just
may
me
might
more
most
must
my
no
nor
not
now
of
off
on
once
only
onto
or
other
our
ours
out
over
own
same
shall
she
should
so
some
such
than
that
the
their
theirs
them
then
there
these
they
this
those
through
to
too
under
until
up
upon
very
was
we
were
what
when
where
which
while
who
whom
why
will
with
within
without
would
you
your
yours
)";

inline constexpr std::string_view kRussianStopwords = R"(и
в
во
не
что
он
на
я
с
со
как
а
то
все
она
так
его
но
да
ты
к
у
же
вы
за
бы
по
только
ее
её
мне
было
вот
от
меня
еще
ещё
нет
о
об
из
ему
теперь
когда
даже
ну
ли
если
уже
или
ни
быть
был
была
были
него
до
вас
вам
ведь
там
потом
себя
ничего
ей
может
они
тут
где
есть
надо
ней
для
мы
тебя
их
чем
сам
чтоб
чтобы
без
будто
чего
раз
тоже
себе
под
будет
тогда
кто
этот
эта
это
эти
при
)";

inline std::string_view builtin_stopwords(std::string_view lang) {
  if (lang == "en" || lang == "simple") return kEnglishStopwords;
  if (lang == "ru") return kRussianStopwords;
  return {};
}

}  // namespace wikidex::detail

#endif  // WIKIDEX_DETAIL_STOPWORDS_DATA_HPP

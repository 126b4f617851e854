(* Unary naturals and addition by recursion on the second argument. *)
Inductive nat : Type0 :=
  | O : nat
  | S : nat -> nat.

Definition two : nat := S (S O).

Fixpoint plus / 2 : nat -> nat -> nat :=
  fun (m n : nat) =>
    match n return nat with
    | O => m
    | S p => S (plus m p)
    end.

Assert plus two two = S (S two) : nat.
Eval plus two (S O).
Check plus two : nat -> nat.
Model two : nat depth 5.

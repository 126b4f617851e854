(* expect: (case) elimination *)
Inductive nat : Type0 := O : nat | S : nat -> nat.
Inductive bool : Type0 := true : bool | false : bool.

Definition bad_motive : bool -> nat :=
  fun (b : bool) => case b return (fun (_ : nat) => nat) with | O | O end.

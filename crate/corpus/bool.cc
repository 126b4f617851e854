(* Booleans, and functions between finite types. *)
Inductive bool : Type0 := true : bool | false : bool.

Definition negb : bool -> bool :=
  fun (b : bool) => match b return bool with true => false | false => true end.

Definition andb : bool -> bool -> bool :=
  fun (a b : bool) => match a return bool with true => b | false => false end.

Definition notp : Prop -> Prop := fun (p : Prop) => p -> forall (a : Prop), a.

Definition both : bool -> Prop := fun (b : bool) => forall (q : Prop), q -> q.

Assert negb (andb true false) = true : bool.

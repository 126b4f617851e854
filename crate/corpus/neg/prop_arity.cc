(* expect: (ind-wf) Prop arity *)
Inductive True : Prop := I : True.
